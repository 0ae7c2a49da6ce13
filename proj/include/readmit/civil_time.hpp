#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace readmit {

/// UTC timestamp with second resolution, stored as seconds since the epoch.
/// De-identified clinical exports use shifted years (often past 2100), so the
/// representation must stay exact well outside the 32-bit range.
using Timestamp = std::int64_t;

/// Parses "YYYY-MM-DD HH:MM:SS". Returns nullopt on any malformation,
/// including out-of-range month/day/time fields.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Inverse of parse_timestamp.
std::string format_timestamp(Timestamp t);

constexpr double kSecondsPerDay = 86400.0;

}  // namespace readmit
