#include "sawkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sawkit/peaks.hpp"

namespace sawkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kQmaxGridPoints = 2001;

// Linear interpolation of a tabulated curve at x (x inside the grid).
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin())
        return ys.front();
    if (it == xs.end())
        return ys.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

std::size_t interior_argmax(const std::vector<double>& v, std::size_t begin, std::size_t end) {
    std::size_t best = begin;
    for (std::size_t i = begin; i < end; ++i)
        if (v[i] > v[best])
            best = i;
    return best;
}

}  // namespace

void PowerSweep::validate() const {
    if (p_in.size() < 4)
        throw std::invalid_argument("PowerSweep: need at least 4 points");
    if (response.size() != p_in.size())
        throw std::invalid_argument("PowerSweep: p_in/response length mismatch");
    for (std::size_t i = 1; i < p_in.size(); ++i)
        if (!(p_in[i] > p_in[i - 1]))
            throw std::invalid_argument("PowerSweep: p_in must be strictly increasing");
}

std::pair<double, double> find_fs_fp(const AdmittanceSweep& sweep) {
    sweep.validate();
    const std::size_t n = sweep.size();
    if (n < 3)
        throw NumericalError("find_fs_fp: need at least 3 points");

    std::vector<double> g(n), re_z(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = sweep.y[i].real();
        re_z[i] = (1.0 / sweep.y[i]).real();
    }

    const std::size_t ig = interior_argmax(g, 0, n);
    if (ig == 0 || ig + 1 >= n)
        throw NumericalError("find_fs_fp: no resonance found (conductance maximum at band edge)");
    const double f_s = parabolic_refine(sweep.freqs, g, ig);

    const std::size_t iz = interior_argmax(re_z, ig + 1, n);
    if (iz <= ig || iz + 1 >= n)
        throw NumericalError("find_fs_fp: band does not cover the antiresonance");
    const double f_p = parabolic_refine(sweep.freqs, re_z, iz);
    if (!(f_p > f_s))
        throw NumericalError("find_fs_fp: f_p <= f_s");
    return {f_s, f_p};
}

double kt2_from_freqs(double f_s, double f_p) {
    if (!(f_p > f_s) || !(f_s > 0.0))
        throw std::invalid_argument("kt2_from_freqs: requires f_p > f_s > 0");
    return (kPi * kPi / 8.0) * (f_p * f_p - f_s * f_s) / (f_s * f_s);
}

double q_series_3db(const AdmittanceSweep& sweep, double f_s) {
    sweep.validate();
    const std::size_t n = sweep.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = sweep.y[i].real();

    const double g_s = interp(sweep.freqs, g, f_s);
    const double half = 0.5 * g_s;

    auto it = std::upper_bound(sweep.freqs.begin(), sweep.freqs.end(), f_s);
    std::size_t center = it == sweep.freqs.begin()
                             ? 0
                             : static_cast<std::size_t>(it - sweep.freqs.begin()) - 1;

    auto cross = [&](std::size_t lo, std::size_t hi) {
        const double t = (half - g[lo]) / (g[hi] - g[lo]);
        return sweep.freqs[lo] + t * (sweep.freqs[hi] - sweep.freqs[lo]);
    };

    double left = std::nan("");
    for (std::size_t j = center + 1; j-- > 0;) {
        if (g[j] < half) {
            left = cross(j, j + 1);
            break;
        }
    }
    double right = std::nan("");
    for (std::size_t j = center + 1; j < n; ++j) {
        if (g[j] < half) {
            right = cross(j, j - 1);
            break;
        }
    }
    if (std::isnan(left) || std::isnan(right))
        throw NumericalError("q_series_3db: half-height crossing outside measured band");
    return f_s / (right - left);
}

std::vector<BodeQPoint> bode_q(const FrequencySweep& sweep) {
    const auto tau = group_delay(sweep);
    std::vector<BodeQPoint> out;
    out.reserve(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const double mag = std::abs(sweep.s11[i]);
        if (mag >= 1.0)
            continue;  // excluded point
        BodeQPoint p;
        p.freq = sweep.freqs[i];
        if (tau[i].second < 0.0) {
            p.q = 0.0;
            p.flagged = true;
        } else {
            p.q = 2.0 * kPi * p.freq * tau[i].second * mag / (1.0 - mag * mag);
        }
        out.push_back(p);
    }
    if (out.empty())
        throw NumericalError("bode_q: every point excluded (|S11| >= 1)");
    return out;
}

std::pair<double, double> default_qmax_band(const MbvdModel& model) {
    if (model.branches.empty())
        throw std::invalid_argument("default_qmax_band: model has no branch");
    const auto dominant = std::max_element(
        model.branches.begin(), model.branches.end(),
        [](const MotionalBranch& a, const MotionalBranch& b) { return a.c_m < b.c_m; });
    const double f_s = branch_resonance(*dominant).f_s;
    const double f_p = f_s * std::sqrt(1.0 + dominant->c_m / model.c_0);
    return {0.98 * f_s, 1.02 * f_p};
}

double q_max_from_model(const MbvdModel& model, std::pair<double, double> band, double z_ref) {
    model.validate();
    if (model.branches.empty())
        throw std::invalid_argument("q_max_from_model: model has no branch");
    if (!(band.first > 0.0) || !(band.second > band.first))
        throw std::invalid_argument("q_max_from_model: invalid band");

    std::vector<double> freqs(kQmaxGridPoints);
    const double step = (band.second - band.first) / double(kQmaxGridPoints - 1);
    for (std::size_t i = 0; i < kQmaxGridPoints; ++i)
        freqs[i] = band.first + step * double(i);

    const auto s = y_to_s(admittance(model, freqs, z_ref));
    const auto q = bode_q(s);
    double q_max = 0.0;
    for (const auto& p : q)
        q_max = std::max(q_max, p.q);
    return q_max;
}

double fom(double kt2, double q_max) {
    if (kt2 < 0.0 || q_max < 0.0)
        throw std::invalid_argument("fom: arguments must be >= 0");
    return kt2 * q_max;
}

std::vector<std::pair<double, double>> spurious_census(const AdmittanceSweep& sweep,
                                                       double f_s, double f_p) {
    sweep.validate();
    if (!(f_s < f_p))
        throw std::invalid_argument("spurious_census: requires f_s < f_p");
    const std::size_t n = sweep.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = sweep.y[i].real();

    const double g_s = interp(sweep.freqs, g, f_s);
    const std::size_t main_index = interior_argmax(g, 0, n);

    auto peaks = find_peaks(g, 0.01 * g_s);
    std::vector<std::pair<double, double>> out;
    for (const auto& p : peaks) {
        if (p.index == main_index)
            continue;
        const double f = parabolic_refine(sweep.freqs, g, p.index);
        if (f > f_s && f < f_p)
            out.emplace_back(f, p.prominence);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<double> p1db(const PowerSweep& sweep) {
    sweep.validate();
    const std::size_t n = sweep.p_in.size();

    // Small-signal line over the lowest quartile of the input-power range.
    const double p_cut = sweep.p_in.front() + 0.25 * (sweep.p_in.back() - sweep.p_in.front());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < n && sweep.p_in[i] <= p_cut; ++i) {
        sx += sweep.p_in[i];
        sy += sweep.response[i];
        sxx += sweep.p_in[i] * sweep.p_in[i];
        sxy += sweep.p_in[i] * sweep.response[i];
        ++m;
    }
    if (m < 2)
        throw std::invalid_argument("p1db: fewer than 2 small-signal points");
    const double denom = double(m) * sxx - sx * sx;
    const double slope = (double(m) * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / double(m);

    double prev_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = sweep.response[i] - (intercept + slope * sweep.p_in[i]);
        if (dev <= -1.0) {
            if (i == 0)
                return sweep.p_in[0];
            const double t = (-1.0 - prev_dev) / (dev - prev_dev);
            return sweep.p_in[i - 1] + t * (sweep.p_in[i] - sweep.p_in[i - 1]);
        }
        prev_dev = dev;
    }
    return std::nullopt;
}

ResonatorMetrics extract_metrics(const AdmittanceSweep& sweep, const MbvdModel& model,
                                 double z_ref) {
    ResonatorMetrics m;
    std::tie(m.f_s, m.f_p) = find_fs_fp(sweep);
    m.kt2 = kt2_from_freqs(m.f_s, m.f_p);
    m.q_series = q_series_3db(sweep, m.f_s);
    m.q_max = q_max_from_model(model, default_qmax_band(model), z_ref);
    m.fom = fom(m.kt2, m.q_max);
    m.spurious = spurious_census(sweep, m.f_s, m.f_p);
    return m;
}

void to_json(nlohmann::json& j, const ResonatorMetrics& m) {
    nlohmann::json spurs = nlohmann::json::array();
    for (const auto& [f, prom] : m.spurious)
        spurs.push_back({{"freq_hz", f}, {"prominence", prom}});
    j = {{"f_s", m.f_s},         {"f_p", m.f_p},   {"kt2", m.kt2},
         {"q_series", m.q_series}, {"q_max", m.q_max}, {"fom", m.fom},
         {"spurious", spurs}};
}

void from_json(const nlohmann::json& j, ResonatorMetrics& m) {
    j.at("f_s").get_to(m.f_s);
    j.at("f_p").get_to(m.f_p);
    j.at("kt2").get_to(m.kt2);
    j.at("q_series").get_to(m.q_series);
    j.at("q_max").get_to(m.q_max);
    j.at("fom").get_to(m.fom);
    m.spurious.clear();
    for (const auto& s : j.value("spurious", nlohmann::json::array()))
        m.spurious.emplace_back(s.at("freq_hz").get<double>(), s.at("prominence").get<double>());
}

}  // namespace sawkit
