#pragma once

#include <span>
#include <string>

#include "semnoma/engine.hpp"

namespace semnoma {

inline constexpr const char* kResultsHeader =
    "axis,scheme,ergodic_secondary_suts_per_s_hz,ergodic_primary_bits_per_s_hz,ci95,"
    "feasible";

// Header plus one row per result, nine significant digits, '\n' endings.
std::string format_results_csv(std::span<const PointResult> rows);

// Line chart of ergodic_secondary against the axis, one polyline per scheme.
std::string render_svg(std::span<const PointResult> rows, const std::string& x_label);

// `out.csv` -> `out.svg`; other names get `.svg` appended.
std::string svg_companion_path(const std::string& csv_path);

// Writes the CSV (and the SVG companion when plot is set). Throws
// ValidationError on empty input, IoError on write failure.
void write_results(std::span<const PointResult> rows, const std::string& out_path,
                   bool plot = false, const std::string& x_label = "axis");

}  // namespace semnoma
