#pragma once

#include <utility>
#include <vector>

namespace sawkit {

// Isotropic slow-layer-on-fast-substrate stack for the scalar Love-wave
// surrogate. v_layer < v_sub is the guided-mode existence condition.
struct LayeredStack {
    double v_layer = 0.0;  // m/s, film shear velocity
    double mu_layer = 0.0; // Pa, film shear modulus
    double v_sub = 0.0;    // m/s
    double mu_sub = 0.0;   // Pa

    void validate() const;
};

struct VelocityPair {
    double v_open = 0.0;   // m/s, electrically open surface
    double v_short = 0.0;  // m/s, electrically shorted surface

    void validate() const;  // requires 0 < v_short <= v_open
};

// k_int^2 = (v_open^2 - v_short^2) / v_open^2, in [0, 1).
double k_int2(const VelocityPair& pair);

// Fundamental Love-mode phase velocity at normalized film thickness
// h/lambda, from tan(kh x) = (mu_sub y) / (mu_layer x) with
// x = sqrt(v^2/v_layer^2 - 1), y = sqrt(1 - v^2/v_sub^2), solved by
// bisection on (v_layer, v_sub). h = 0 returns v_sub exactly.
double love_velocity(const LayeredStack& stack, double h_over_lambda);

// Normalized residual of the dispersion relation at velocity v; near zero
// at a returned root.
double dispersion_residual(const LayeredStack& stack, double h_over_lambda, double v);

// Pointwise k_int^2 of the open- and short-surface surrogate velocities.
std::vector<std::pair<double, double>> kint2_curve(const LayeredStack& stack_open,
                                                   const LayeredStack& stack_short,
                                                   const std::vector<double>& grid);

}  // namespace sawkit
