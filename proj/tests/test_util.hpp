#pragma once

#include <random>
#include <vector>

#include "sawkit/mbvd.hpp"

namespace sawkit::testutil {

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

// Single-branch model shaped like the reference 6.5 GHz device.
inline MbvdModel device_d_model(double q = 565.0, double r_s = 0.0, double r_0 = 0.0) {
    return synth_from_specs(6.531e9, 0.22, 330e-15, q, r_s, r_0);
}

// Two-branch model mimicking a dominant SH mode plus a weaker Rayleigh mode.
inline MbvdModel two_mode_model() {
    MbvdModel m = synth_from_specs(6.531e9, 0.22, 330e-15, 500.0, 7.5, 2.0, "SH");
    MbvdModel rayleigh = synth_from_specs(6.80e9, 0.02, 330e-15, 300.0, 0.0, 0.0, "Rayleigh");
    m.branches.push_back(rayleigh.branches.front());
    return m;
}

}  // namespace sawkit::testutil
