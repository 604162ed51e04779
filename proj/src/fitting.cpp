#include "sawkit/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sawkit/peaks.hpp"

namespace sawkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWeightEps = 1e-6;       // S, floor for inverse-magnitude weights
constexpr double kLogFloor = 1e-30;       // keeps zero-valued resistances in log space
constexpr double kFdStep = 1e-6;          // forward-difference step in log parameters
constexpr double kLambdaInit = 1e-3;
constexpr double kLambdaGrow = 10.0;
constexpr double kLambdaShrink = 3.0;
constexpr double kLambdaMax = 1e14;
constexpr int kMaxSeedBranches = 6;

std::vector<double> pack(const MbvdModel& m) {
    std::vector<double> theta;
    theta.reserve(3 + 3 * m.branches.size());
    auto push = [&](double v) { theta.push_back(std::log(std::max(v, kLogFloor))); };
    push(m.r_s);
    push(m.r_0);
    push(m.c_0);
    for (const auto& b : m.branches) {
        push(b.r_m);
        push(b.l_m);
        push(b.c_m);
    }
    return theta;
}

// Log values clamped so exp() can neither underflow to 0 nor overflow.
double safe_exp(double theta) {
    return std::exp(std::clamp(theta, -690.0, 690.0));
}

MbvdModel unpack(const std::vector<double>& theta, const MbvdModel& proto) {
    MbvdModel m = proto;
    std::size_t k = 0;
    m.r_s = safe_exp(theta[k++]);
    m.r_0 = safe_exp(theta[k++]);
    m.c_0 = safe_exp(theta[k++]);
    for (auto& b : m.branches) {
        b.r_m = safe_exp(theta[k++]);
        b.l_m = safe_exp(theta[k++]);
        b.c_m = safe_exp(theta[k++]);
    }
    return m;
}

// Solves the SPD system A x = b in place via Cholesky; returns false when
// the factorization breaks down.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k)
                s -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (!(s > 0.0))
                    return false;
                a[i * n + i] = std::sqrt(s);
            } else {
                a[i * n + j] = s / a[j * n + j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= a[k * n + i] * b[k];
        b[i] = s / a[i * n + i];
    }
    return true;
}

}  // namespace

void FitOptions::validate() const {
    if (max_iterations < 1)
        throw std::invalid_argument("FitOptions: max_iterations must be >= 1");
    if (!(relative_cost_tolerance > 0.0))
        throw std::invalid_argument("FitOptions: relative_cost_tolerance must be > 0");
    if (branch_count && *branch_count < 0)
        throw std::invalid_argument("FitOptions: branch_count must be >= 0");
}

MbvdModel seed_model(const AdmittanceSweep& sweep, std::optional<int> branch_count) {
    sweep.validate();
    const std::size_t n = sweep.size();
    const bool static_only = branch_count && *branch_count == 0;
    if (n < 16 && !static_only)
        throw std::invalid_argument("seed_model: need at least 16 frequency points");

    std::vector<double> g(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = sweep.y[i].real();
        b[i] = sweep.y[i].imag();
    }

    MbvdModel m;

    // c_0 from the susceptance slope over the lowest decile of the band.
    const double f_lo = sweep.freqs.front();
    const double f_hi = sweep.freqs.back();
    const double decile = f_lo + 0.1 * (f_hi - f_lo);
    double c0_sum = 0.0;
    std::size_t c0_n = 0;
    for (std::size_t i = 0; i < n && (sweep.freqs[i] <= decile || c0_n < 2); ++i) {
        c0_sum += b[i] / (2.0 * kPi * sweep.freqs[i]);
        ++c0_n;
    }
    m.c_0 = c0_sum / static_cast<double>(c0_n);
    if (!(m.c_0 > 0.0)) {
        // Band starts near a resonance; fall back to the band-wide median.
        std::vector<double> slopes(n);
        for (std::size_t i = 0; i < n; ++i)
            slopes[i] = b[i] / (2.0 * kPi * sweep.freqs[i]);
        std::nth_element(slopes.begin(), slopes.begin() + n / 2, slopes.end());
        m.c_0 = std::max(std::abs(slopes[n / 2]), 1e-18);
    }

    // r_s from the high-frequency real-impedance floor.
    double rs_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (sweep.freqs[i] < f_hi - 0.1 * (f_hi - f_lo))
            continue;
        const double re_z = (1.0 / sweep.y[i]).real();
        rs_min = std::min(rs_min, re_z);
    }
    m.r_s = std::isfinite(rs_min) ? std::max(rs_min, 0.0) : 0.0;
    m.r_0 = 0.0;

    const double g_range = *std::max_element(g.begin(), g.end()) -
                           *std::min_element(g.begin(), g.end());
    auto peaks = find_peaks(g, 0.05 * g_range);
    const std::size_t want = branch_count ? static_cast<std::size_t>(*branch_count)
                                          : std::min(peaks.size(), std::size_t(kMaxSeedBranches));
    if (want > 0 && peaks.empty())
        throw NumericalError("seed_model: no conductance peaks found");
    if (peaks.size() > want)
        peaks.resize(want);

    int index = 0;
    for (const auto& p : peaks) {
        const double f_k = parabolic_refine(sweep.freqs, g, p.index);
        const double df = half_height_width(sweep.freqs, g, p);
        if (!(df > 0.0))
            continue;
        MotionalBranch br;
        br.label = "mode" + std::to_string(++index);
        const double q_k = f_k / df;
        br.r_m = 1.0 / (p.height - p.base);
        br.l_m = q_k * br.r_m / (2.0 * kPi * f_k);
        br.c_m = 1.0 / (std::pow(2.0 * kPi * f_k, 2) * br.l_m);
        m.branches.push_back(std::move(br));
    }
    m.validate();
    return m;
}

FitResult fit(const AdmittanceSweep& sweep, const MbvdModel& seed, const FitOptions& options) {
    sweep.validate();
    seed.validate();
    options.validate();

    const std::size_t n = sweep.size();
    const std::size_t np = 3 + 3 * seed.branches.size();
    if (n < 2 * np)
        throw std::invalid_argument("fit: need at least 2x free-parameter-count points");

    std::vector<double> w(n);
    double weight_norm = 0.0;  // sum of w_i * max(|Y_i|^2, eps^2)
    for (std::size_t i = 0; i < n; ++i) {
        const double mag2 = std::max(std::norm(sweep.y[i]), kWeightEps * kWeightEps);
        w[i] = options.weight_mode == WeightMode::Uniform ? 1.0 : 1.0 / mag2;
        weight_norm += w[i] * mag2;
    }

    auto residuals = [&](const std::vector<double>& theta, std::vector<double>& r) {
        const MbvdModel m = unpack(theta, seed);
        const AdmittanceSweep ym = admittance(m, sweep.freqs, sweep.z_ref);
        for (std::size_t i = 0; i < n; ++i) {
            const auto d = ym.y[i] - sweep.y[i];
            const double sw = std::sqrt(w[i]);
            r[2 * i] = sw * d.real();
            r[2 * i + 1] = sw * d.imag();
        }
    };
    auto cost_of = [&](const std::vector<double>& r) {
        double c = 0.0;
        for (double v : r)
            c += v * v;
        return c;
    };

    // Damped least-squares descent from one starting point.
    auto lm_run = [&](std::vector<double> theta) {
        FitResult result;
        std::vector<double> r(2 * n), r_trial(2 * n), r_step(2 * n);
        residuals(theta, r);
        double cost = cost_of(r);
        if (!std::isfinite(cost))
            throw NumericalError("fit: non-finite cost at seed model");
        result.accepted_costs.push_back(cost);

        std::vector<double> jac(2 * n * np);  // column-major: jac[j*2n + i]
        std::vector<double> jtj(np * np), jtj_damped(np * np), rhs(np), step(np);

        double lambda = kLambdaInit;
        int small_decreases = 0;
        int iter = 0;
        while (iter < options.max_iterations && !result.converged) {
            ++iter;
            // Forward-difference Jacobian in log-parameter space.
            for (std::size_t j = 0; j < np; ++j) {
                std::vector<double> theta_j = theta;
                theta_j[j] += kFdStep;
                residuals(theta_j, r_step);
                for (std::size_t i = 0; i < 2 * n; ++i)
                    jac[j * 2 * n + i] = (r_step[i] - r[i]) / kFdStep;
            }
            for (std::size_t a = 0; a < np; ++a)
                for (std::size_t b = 0; b <= a; ++b) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < 2 * n; ++i)
                        s += jac[a * 2 * n + i] * jac[b * 2 * n + i];
                    jtj[a * np + b] = jtj[b * np + a] = s;
                }
            for (std::size_t a = 0; a < np; ++a) {
                double s = 0.0;
                for (std::size_t i = 0; i < 2 * n; ++i)
                    s += jac[a * 2 * n + i] * r[i];
                rhs[a] = -s;
            }

            bool accepted = false;
            while (lambda <= kLambdaMax) {
                jtj_damped = jtj;
                for (std::size_t a = 0; a < np; ++a)
                    jtj_damped[a * np + a] += lambda * std::max(jtj[a * np + a], 1e-300);
                step = rhs;
                if (!cholesky_solve(jtj_damped, step, np)) {
                    lambda *= kLambdaGrow;
                    continue;
                }
                std::vector<double> theta_trial = theta;
                for (std::size_t a = 0; a < np; ++a)
                    theta_trial[a] += step[a];
                residuals(theta_trial, r_trial);
                const double cost_trial = cost_of(r_trial);
                if (std::isfinite(cost_trial) && cost_trial < cost) {
                    const double rel = (cost - cost_trial) / cost;
                    theta = std::move(theta_trial);
                    r.swap(r_trial);
                    cost = cost_trial;
                    result.accepted_costs.push_back(cost);
                    lambda /= kLambdaShrink;
                    small_decreases =
                        rel < options.relative_cost_tolerance ? small_decreases + 1 : 0;
                    if (small_decreases >= 2)
                        result.converged = true;
                    accepted = true;
                    break;
                }
                lambda *= kLambdaGrow;
            }
            if (!accepted) {
                // No downhill step exists within the damping range: the cost
                // can no longer decrease, satisfying any positive tolerance.
                result.converged = true;
                break;
            }
        }

        result.model = unpack(theta, seed);
        result.iterations = iter;
        result.residual_rms = std::sqrt(cost / weight_norm);
        return result;
    };

    const std::vector<double> theta_seed = pack(seed);
    FitResult result = lm_run(theta_seed);

    // A seed whose branch resonances sit many linewidths away from the data's
    // conductance peaks strands the descent in a branch-killing local minimum.
    // Re-run from a start with branch resonances snapped onto the detected
    // conductance peaks (strongest peak to the lowest-r_m branch) and keep
    // whichever run ends lower. The snapped start can score worse than the
    // seed up front yet still descend to the better basin, so both runs are
    // carried to completion rather than gating on the initial cost.
    if (!seed.branches.empty()) {
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i)
            g[i] = sweep.y[i].real();
        const auto [g_min, g_max] = std::minmax_element(g.begin(), g.end());
        const auto peaks = find_peaks(g, 0.01 * (*g_max - *g_min));
        std::vector<std::size_t> order(seed.branches.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return theta_seed[3 + 3 * a] < theta_seed[3 + 3 * b];  // ascending r_m
        });
        std::vector<double> theta_snap = theta_seed;
        for (std::size_t p = 0; p < peaks.size() && p < order.size(); ++p) {
            const double f_k = parabolic_refine(sweep.freqs, g, peaks[p].index);
            const double c_m = safe_exp(theta_seed[3 + 3 * order[p] + 2]);
            theta_snap[3 + 3 * order[p] + 1] =
                std::log(1.0 / (std::pow(2.0 * kPi * f_k, 2) * c_m));
        }
        if (theta_snap != theta_seed) {
            const FitResult snapped = lm_run(theta_snap);
            if (snapped.accepted_costs.back() < result.accepted_costs.back())
                result = snapped;
        }
    }
    return result;
}

void to_json(nlohmann::json& j, const FitResult& r) {
    j = {{"model", r.model},
         {"residual_rms", r.residual_rms},
         {"iterations", r.iterations},
         {"converged", r.converged}};
}

void from_json(const nlohmann::json& j, FitResult& r) {
    j.at("model").get_to(r.model);
    j.at("residual_rms").get_to(r.residual_rms);
    j.at("iterations").get_to(r.iterations);
    j.at("converged").get_to(r.converged);
}

}  // namespace sawkit
