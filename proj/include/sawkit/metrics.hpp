#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sawkit/mbvd.hpp"
#include "sawkit/network.hpp"

namespace sawkit {

// Every reported performance figure for one device.
struct ResonatorMetrics {
    double f_s = 0.0;
    double f_p = 0.0;
    double kt2 = 0.0;       // fraction
    double q_series = 0.0;  // f_s / 3 dB conductance bandwidth
    double q_max = 0.0;     // max Bode-Q on the fitted-model curve
    double fom = 0.0;       // kt2 * q_max
    std::vector<std::pair<double, double>> spurious;  // (Hz, conductance prominence)
};

// Input-referred compression sweep, dB domain.
struct PowerSweep {
    std::vector<double> p_in;      // dBm, strictly increasing, >= 4 points
    std::vector<double> response;  // dB, same length

    void validate() const;
};

struct BodeQPoint {
    double freq = 0.0;
    double q = 0.0;
    bool flagged = false;  // negative group delay, q forced to 0
};

// f_s = argmax of conductance, f_p = argmax of Re(1/Y) above it, both
// refined by 3-point parabolic interpolation. Throws NumericalError when no
// interior maximum exists or the band misses the antiresonance.
std::pair<double, double> find_fs_fp(const AdmittanceSweep& sweep);

// kt2 = (pi^2/8) * (f_p^2 - f_s^2) / f_s^2.
double kt2_from_freqs(double f_s, double f_p);

// Q_s = f_s / width of the region with G(f) >= G(f_s)/2.
double q_series_3db(const AdmittanceSweep& sweep, double f_s);

// Q(f) = 2pi f * tau_gd * |S11| / (1 - |S11|^2). Points with |S11| >= 1 are
// excluded; negative group delay yields q = 0 with flagged = true. Throws
// NumericalError if every point is excluded.
std::vector<BodeQPoint> bode_q(const FrequencySweep& sweep);

// Max Bode-Q of the model admittance synthesized on a 2001-point uniform
// grid over `band`, converted to S11 at z_ref.
double q_max_from_model(const MbvdModel& model, std::pair<double, double> band,
                        double z_ref = 50.0);

// Default Bode-Q search band: [0.98 f_s, 1.02 f_p] of the dominant
// (largest-c_m) branch.
std::pair<double, double> default_qmax_band(const MbvdModel& model);

double fom(double kt2, double q_max);

// Conductance peaks strictly inside (f_s, f_p) with prominence >= 1% of
// G(f_s), main peak excluded, sorted by frequency.
std::vector<std::pair<double, double>> spurious_census(const AdmittanceSweep& sweep,
                                                       double f_s, double f_p);

// Input power where the response deviates -1 dB from the small-signal line
// (fit over the lowest quartile of p_in); nullopt when the sweep never
// compresses by 1 dB.
std::optional<double> p1db(const PowerSweep& sweep);

// Full extraction for one device: sweep-side figures plus model-side q_max.
ResonatorMetrics extract_metrics(const AdmittanceSweep& sweep, const MbvdModel& model,
                                 double z_ref = 50.0);

void to_json(nlohmann::json& j, const ResonatorMetrics& m);
void from_json(const nlohmann::json& j, ResonatorMetrics& m);

}  // namespace sawkit
