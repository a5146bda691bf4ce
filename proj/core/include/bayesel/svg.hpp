#ifndef BAYESEL_SVG_HPP
#define BAYESEL_SVG_HPP

#include <string>
#include <vector>

#include "bayesel/types.hpp"

namespace bayesel {

// Standalone SVG writers, no plotting dependency. Output is deterministic for
// identical inputs.

// z(i, j) is the cell value at x index i (column), y index j (row); the image
// maps x left-to-right and y bottom-to-top on linear axes.
void write_heatmap_svg(const std::string& path, const Matrix& z, double x_lo,
                       double x_hi, double y_lo, double y_hi,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label);

void write_trace_svg(const std::string& path, const std::vector<double>& series,
                     const std::string& title);

// One polyline per series, shared axes; series must be equally long.
void write_overlay_svg(const std::string& path,
                       const std::vector<std::vector<double>>& series,
                       const std::vector<std::string>& labels,
                       const std::string& title);

}  // namespace bayesel

#endif
