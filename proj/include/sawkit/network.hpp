#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "sawkit/touchstone.hpp"

namespace sawkit {

// Complex admittance on the same grid conventions as FrequencySweep.
struct AdmittanceSweep {
    std::vector<double> freqs;            // Hz, strictly increasing, all > 0
    std::vector<std::complex<double>> y;  // siemens
    double z_ref = 50.0;                  // carried for the inverse mapping

    std::size_t size() const noexcept { return freqs.size(); }
    void validate() const;
};

// Y = (1/z_ref) * (1 - S) / (1 + S). Throws NumericalError if any point is
// within 1e-12 of the ideal short S = -1.
AdmittanceSweep s_to_y(const FrequencySweep& sweep);

// S = (1 - z_ref*Y) / (1 + z_ref*Y). Throws NumericalError when the
// denominator vanishes exactly.
FrequencySweep y_to_s(const AdmittanceSweep& sweep);

// Group delay tau(f) = -(1/2pi) dphi/df from the unwrapped S11 phase.
// Central differences in the interior, one-sided at the ends; the unwrap
// threshold is pi. Requires >= 3 points.
std::vector<std::pair<double, double>> group_delay(const FrequencySweep& sweep);

}  // namespace sawkit
