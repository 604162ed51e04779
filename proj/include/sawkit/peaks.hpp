#pragma once

#include <cstddef>
#include <vector>

namespace sawkit {

// A local maximum with its topographic prominence. `base` is the higher of
// the two side minima the prominence is measured against.
struct Peak {
    std::size_t index = 0;
    double height = 0.0;
    double prominence = 0.0;
    double base = 0.0;
};

// Local maxima with prominence >= min_prominence, sorted by descending
// prominence. Prominence walks each side until a higher sample or the
// signal border is reached, tracking the minimum along the way.
std::vector<Peak> find_peaks(const std::vector<double>& values, double min_prominence);

// Full width of the region around the peak where the curve stays above
// base + (height - base)/2, crossings located by linear interpolation.
// If one side never drops below half height inside the grid, the other
// side's half-width is mirrored; returns 0 if neither side crosses.
double half_height_width(const std::vector<double>& xs, const std::vector<double>& values,
                         const Peak& peak);

// Vertex abscissa of the parabola through three samples centered at i
// (clamped to the interior). Falls back to xs[i] for a degenerate triple.
double parabolic_refine(const std::vector<double>& xs, const std::vector<double>& values,
                        std::size_t i);

}  // namespace sawkit
