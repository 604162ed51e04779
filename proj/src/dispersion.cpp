#include "sawkit/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sawkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Scaled form of tan(kh x) = mu_sub y / (mu_layer x):
//   F(v) = mu_layer x sin(theta) - mu_sub y cos(theta),  theta = 2 pi (h/l) x
// with x = sqrt(v^2/v_layer^2 - 1), y = sqrt(1 - v^2/v_sub^2). Bounded on the
// whole search interval, negative at v_layer+ and positive at the upper end.
double relation(const LayeredStack& s, double h_over_lambda, double v) {
    const double x2 = v * v / (s.v_layer * s.v_layer) - 1.0;
    const double y2 = 1.0 - v * v / (s.v_sub * s.v_sub);
    const double x = std::sqrt(std::max(x2, 0.0));
    const double y = std::sqrt(std::max(y2, 0.0));
    const double theta = 2.0 * kPi * h_over_lambda * x;
    return s.mu_layer * x * std::sin(theta) - s.mu_sub * y * std::cos(theta);
}

double relation_scale(const LayeredStack& s, double v) {
    const double x2 = v * v / (s.v_layer * s.v_layer) - 1.0;
    const double y2 = 1.0 - v * v / (s.v_sub * s.v_sub);
    const double x = std::sqrt(std::max(x2, 0.0));
    const double y = std::sqrt(std::max(y2, 0.0));
    return s.mu_layer * x + s.mu_sub * y;
}

}  // namespace

void LayeredStack::validate() const {
    if (!(v_layer > 0.0) || !(v_sub > 0.0) || !(mu_layer > 0.0) || !(mu_sub > 0.0))
        throw std::invalid_argument("LayeredStack: all parameters must be > 0");
    if (!(v_layer < v_sub))
        throw std::invalid_argument("LayeredStack: v_layer must be < v_sub (Love-wave existence)");
}

void VelocityPair::validate() const {
    if (!(v_short > 0.0) || !(v_short <= v_open))
        throw std::invalid_argument("VelocityPair: requires 0 < v_short <= v_open");
}

double k_int2(const VelocityPair& pair) {
    pair.validate();
    return (pair.v_open * pair.v_open - pair.v_short * pair.v_short) /
           (pair.v_open * pair.v_open);
}

double love_velocity(const LayeredStack& stack, double h_over_lambda) {
    stack.validate();
    if (h_over_lambda < 0.0)
        throw std::invalid_argument("love_velocity: h_over_lambda must be >= 0");
    if (h_over_lambda == 0.0)
        return stack.v_sub;

    // The fundamental root always satisfies theta < pi/2: tan diverges there
    // while the right-hand side stays finite. Upper bracket is the smaller of
    // v_sub and the velocity where theta reaches pi/2.
    const double h = h_over_lambda;
    const double x_half = 1.0 / (4.0 * h);
    const double v_theta = stack.v_layer * std::sqrt(1.0 + x_half * x_half);
    double lo = stack.v_layer;            // relation < 0 here
    double hi = std::min(stack.v_sub, v_theta);  // relation > 0 here

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;  // interval at double resolution
        (relation(stack, h, mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double dispersion_residual(const LayeredStack& stack, double h_over_lambda, double v) {
    stack.validate();
    const double scale = relation_scale(stack, v);
    if (scale == 0.0)
        return 0.0;
    return std::abs(relation(stack, h_over_lambda, v)) / scale;
}

std::vector<std::pair<double, double>> kint2_curve(const LayeredStack& stack_open,
                                                   const LayeredStack& stack_short,
                                                   const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double h : grid) {
        VelocityPair pair;
        pair.v_open = love_velocity(stack_open, h);
        pair.v_short = love_velocity(stack_short, h);
        out.emplace_back(h, k_int2(pair));
    }
    return out;
}

}  // namespace sawkit
