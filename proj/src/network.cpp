#include "sawkit/network.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sawkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void AdmittanceSweep::validate() const {
    if (freqs.empty())
        throw std::invalid_argument("AdmittanceSweep: empty frequency grid");
    if (y.size() != freqs.size())
        throw std::invalid_argument("AdmittanceSweep: freqs/y length mismatch");
    if (!(z_ref > 0.0))
        throw std::invalid_argument("AdmittanceSweep: z_ref must be > 0");
    double prev = 0.0;
    for (double f : freqs) {
        if (!(f > prev) || !std::isfinite(f))
            throw std::invalid_argument("AdmittanceSweep: frequencies must be strictly increasing and > 0");
        prev = f;
    }
}

AdmittanceSweep s_to_y(const FrequencySweep& sweep) {
    sweep.validate();
    AdmittanceSweep out;
    out.freqs = sweep.freqs;
    out.z_ref = sweep.z_ref;
    out.y.reserve(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto s = sweep.s11[i];
        if (std::abs(s + 1.0) <= 1e-12) {
            std::ostringstream msg;
            msg << "singular S->Y conversion (S = -1) at " << sweep.freqs[i] << " Hz";
            throw NumericalError(msg.str());
        }
        out.y.push_back((1.0 - s) / (1.0 + s) / sweep.z_ref);
    }
    return out;
}

FrequencySweep y_to_s(const AdmittanceSweep& sweep) {
    sweep.validate();
    FrequencySweep out;
    out.freqs = sweep.freqs;
    out.z_ref = sweep.z_ref;
    out.s11.reserve(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto zy = sweep.z_ref * sweep.y[i];
        const auto den = 1.0 + zy;
        if (den == std::complex<double>(0.0, 0.0)) {
            std::ostringstream msg;
            msg << "singular Y->S conversion (z_ref*Y = -1) at " << sweep.freqs[i] << " Hz";
            throw NumericalError(msg.str());
        }
        out.s11.push_back((1.0 - zy) / den);
    }
    return out;
}

std::vector<std::pair<double, double>> group_delay(const FrequencySweep& sweep) {
    sweep.validate();
    const std::size_t n = sweep.size();
    if (n < 3)
        throw std::invalid_argument("group_delay: need at least 3 frequency points");

    // Unwrapped phase, +-pi jump threshold.
    std::vector<double> phi(n);
    phi[0] = std::arg(sweep.s11[0]);
    for (std::size_t i = 1; i < n; ++i) {
        double d = std::arg(sweep.s11[i]) - std::arg(sweep.s11[i - 1]);
        while (d > kPi) d -= 2.0 * kPi;
        while (d < -kPi) d += 2.0 * kPi;
        phi[i] = phi[i - 1] + d;
    }

    std::vector<std::pair<double, double>> tau(n);
    const auto& f = sweep.freqs;
    auto slope = [&](std::size_t a, std::size_t b) {
        return (phi[b] - phi[a]) / (f[b] - f[a]);
    };
    tau[0] = {f[0], -slope(0, 1) / (2.0 * kPi)};
    for (std::size_t i = 1; i + 1 < n; ++i)
        tau[i] = {f[i], -slope(i - 1, i + 1) / (2.0 * kPi)};
    tau[n - 1] = {f[n - 1], -slope(n - 2, n - 1) / (2.0 * kPi)};
    return tau;
}

}  // namespace sawkit
