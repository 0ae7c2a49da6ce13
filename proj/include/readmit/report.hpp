#pragma once

#include <iosfwd>
#include <vector>

#include "readmit/classifiers.hpp"

namespace readmit {

void write_importance_csv(std::ostream& out, const std::vector<ImportanceEntry>& entries);

/// Ranked tag cloud on a fixed grid, one <text> element per entry. Font size
/// scales linearly from font_min to font_max with normalized importance;
/// when all importances are equal every entry gets font_max. Positive terms
/// render warm, negative terms cold.
void write_tag_cloud_svg(std::ostream& out, const std::vector<ImportanceEntry>& entries,
                         double font_min, double font_max);

}  // namespace readmit
