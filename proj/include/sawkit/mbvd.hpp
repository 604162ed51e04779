#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sawkit/network.hpp"

namespace sawkit {

// One motional RLC arm of the equivalent circuit (one acoustic mode).
struct MotionalBranch {
    double r_m = 0.0;   // ohms, >= 0
    double l_m = 0.0;   // henries, > 0
    double c_m = 0.0;   // farads, > 0
    std::string label;  // e.g. "SH", "Rayleigh"
};

// Modified Butterworth-Van Dyke model: series parasitic r_s feeding the
// parallel set {static branch (r_0 + c_0), motional branches}.
struct MbvdModel {
    double r_s = 0.0;  // ohms, >= 0
    double r_0 = 0.0;  // ohms, >= 0
    double c_0 = 0.0;  // farads, > 0
    std::vector<MotionalBranch> branches;

    void validate() const;
};

struct BranchResonance {
    double f_s = 0.0;  // Hz
    double q = 0.0;    // infinity when r_m == 0
};

// Model admittance at each frequency. Lossless series-resonance poles are
// clipped to a magnitude cap of 1e12 S.
AdmittanceSweep admittance(const MbvdModel& model, const std::vector<double>& freqs,
                           double z_ref = 50.0);

// f_s = 1/(2pi sqrt(l_m c_m)), q = sqrt(l_m/c_m)/r_m.
BranchResonance branch_resonance(const MotionalBranch& branch);

// Single-branch model from target figures: c_m = (8/pi^2)*kt2*c_0,
// l_m = 1/((2pi f_s)^2 c_m), r_m = 2pi f_s l_m / q.
MbvdModel synth_from_specs(double f_s, double kt2, double c_0, double q,
                           double r_s = 0.0, double r_0 = 0.0,
                           const std::string& label = "SH");

// Branches sorted by ascending series-resonance frequency.
MbvdModel canonicalized(const MbvdModel& model);

void to_json(nlohmann::json& j, const MotionalBranch& b);
void from_json(const nlohmann::json& j, MotionalBranch& b);
void to_json(nlohmann::json& j, const MbvdModel& m);
void from_json(const nlohmann::json& j, MbvdModel& m);

}  // namespace sawkit
