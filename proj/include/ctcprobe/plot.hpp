#pragma once

#include <string>

#include "ctcprobe/sweep.hpp"

namespace ctcprobe {

/// Renders the P columns of a sweep table against the swept value as an SVG
/// line plot (markers only for a single row). Byte output is deterministic for
/// identical input. Throws InvalidParameterError when no plottable rows exist.
std::string render_svg(const SweepTable& table, const std::string& swept_label);

void render_svg_file(const std::string& csv_path, const std::string& out_path,
                     const std::string& swept_label);

}  // namespace ctcprobe
