#include "sawkit/peaks.hpp"

#include <algorithm>
#include <cmath>

namespace sawkit {

std::vector<Peak> find_peaks(const std::vector<double>& values, double min_prominence) {
    std::vector<Peak> peaks;
    const std::size_t n = values.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1]) || !(values[i] > values[i + 1]))
            continue;
        const double h = values[i];
        double left_min = h;
        for (std::size_t j = i; j-- > 0;) {
            left_min = std::min(left_min, values[j]);
            if (values[j] > h)
                break;
        }
        double right_min = h;
        for (std::size_t j = i + 1; j < n; ++j) {
            right_min = std::min(right_min, values[j]);
            if (values[j] > h)
                break;
        }
        const double base = std::max(left_min, right_min);
        const double prom = h - base;
        if (prom >= min_prominence)
            peaks.push_back({i, h, prom, base});
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.prominence > b.prominence; });
    return peaks;
}

double half_height_width(const std::vector<double>& xs, const std::vector<double>& values,
                         const Peak& peak) {
    const std::size_t n = values.size();
    const double half = peak.base + 0.5 * (peak.height - peak.base);

    auto cross = [&](std::size_t lo, std::size_t hi) {
        // Linear interpolation of the half-height crossing between samples.
        const double t = (half - values[lo]) / (values[hi] - values[lo]);
        return xs[lo] + t * (xs[hi] - xs[lo]);
    };

    double left = std::nan("");
    for (std::size_t j = peak.index; j-- > 0;) {
        if (values[j] < half) {
            left = cross(j, j + 1);
            break;
        }
    }
    double right = std::nan("");
    for (std::size_t j = peak.index + 1; j < n; ++j) {
        if (values[j] < half) {
            right = cross(j, j - 1);
            break;
        }
    }

    const double x0 = xs[peak.index];
    if (std::isnan(left) && std::isnan(right))
        return 0.0;
    if (std::isnan(left))
        return 2.0 * (right - x0);
    if (std::isnan(right))
        return 2.0 * (x0 - left);
    return right - left;
}

double parabolic_refine(const std::vector<double>& xs, const std::vector<double>& values,
                        std::size_t i) {
    if (i == 0 || i + 1 >= xs.size())
        return xs[i];
    const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
    const double y0 = values[i - 1], y1 = values[i], y2 = values[i + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if (den == 0.0)
        return x1;
    return x1 - 0.5 * num / den;
}

}  // namespace sawkit
