#include "readmit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

namespace readmit {
namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

}  // namespace

void write_importance_csv(std::ostream& out, const std::vector<ImportanceEntry>& entries) {
    out << "rank,term,importance,sign\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out << (i + 1) << ',' << entries[i].term << ',' << fmt("%.17g", entries[i].importance)
            << ',' << entries[i].sign << '\n';
    }
}

void write_tag_cloud_svg(std::ostream& out, const std::vector<ImportanceEntry>& entries,
                         double font_min, double font_max) {
    constexpr std::size_t kColumns = 4;
    constexpr double kColumnWidth = 230.0;
    const double row_height = font_max * 1.4;
    const std::size_t rows = entries.empty() ? 0 : (entries.size() + kColumns - 1) / kColumns;
    const double width = kColumns * kColumnWidth + 20.0;
    const double height = static_cast<double>(rows) * row_height + 20.0;

    double lo = 0.0;
    double hi = 0.0;
    if (!entries.empty()) {
        auto [min_it, max_it] =
            std::minmax_element(entries.begin(), entries.end(),
                                [](const ImportanceEntry& a, const ImportanceEntry& b) {
                                    return a.importance < b.importance;
                                });
        lo = min_it->importance;
        hi = max_it->importance;
    }

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%.0f", width)
        << "\" height=\"" << fmt("%.0f", height) << "\">\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        const double t = hi > lo ? (entry.importance - lo) / (hi - lo) : 1.0;
        const double font = font_min + (font_max - font_min) * t;
        const double x = 10.0 + static_cast<double>(i % kColumns) * kColumnWidth;
        const double y = row_height * static_cast<double>(i / kColumns + 1);
        const char* fill = entry.sign < 0 ? "#31547f" : "#a23b3b";
        out << "  <text x=\"" << fmt("%.1f", x) << "\" y=\"" << fmt("%.1f", y)
            << "\" font-size=\"" << fmt("%.2f", font) << "\" fill=\"" << fill << "\">"
            << xml_escape(entry.term) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace readmit
