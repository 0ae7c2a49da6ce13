#pragma once

#include <string>
#include <string_view>

namespace readmit {

/// Porter (1980) suffix stripper, steps 1a through 5b with the measure-based
/// conditions of the published algorithm. Input must be lowercase ASCII
/// letters; the function is total and returns unrecognized input unchanged
/// where no rule fires.
std::string porter_stem(std::string_view token);

}  // namespace readmit
