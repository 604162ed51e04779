#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "sawkit/mbvd.hpp"
#include "sawkit/network.hpp"

namespace sawkit {

enum class WeightMode { Uniform, InverseMagnitude };

struct FitOptions {
    int max_iterations = 200;
    double relative_cost_tolerance = 1e-9;
    WeightMode weight_mode = WeightMode::InverseMagnitude;
    std::optional<int> branch_count;  // seeding override

    void validate() const;
};

struct FitResult {
    MbvdModel model;
    double residual_rms = 0.0;  // weighted relative RMS of complex admittance
    int iterations = 0;
    bool converged = false;

    // Accepted-step cost sequence; non-increasing by construction.
    // Not part of the serialized document.
    std::vector<double> accepted_costs;
};

// Automatic seed: c_0 from the low-frequency susceptance slope, r_s from the
// high-frequency real-impedance floor, one branch per conductance peak with
// prominence >= 5% of the global conductance range (descending prominence,
// capped at 6 unless overridden).
MbvdModel seed_model(const AdmittanceSweep& sweep,
                     std::optional<int> branch_count = std::nullopt);

// Damped least squares on log-parameters (positivity by construction).
// Forward-difference Jacobian, step 1e-6; damping x10 on rejected steps,
// /3 on accepted ones. Deterministic: identical inputs give bit-identical
// results.
FitResult fit(const AdmittanceSweep& sweep, const MbvdModel& seed,
              const FitOptions& options = {});

void to_json(nlohmann::json& j, const FitResult& r);
void from_json(const nlohmann::json& j, FitResult& r);

}  // namespace sawkit
