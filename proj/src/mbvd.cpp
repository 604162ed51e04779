#include "sawkit/mbvd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace sawkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kAdmittanceCap = 1e12;  // S, clips lossless resonance poles
}

void MbvdModel::validate() const {
    if (!(c_0 > 0.0))
        throw std::invalid_argument("MbvdModel: c_0 must be > 0");
    if (r_s < 0.0 || r_0 < 0.0)
        throw std::invalid_argument("MbvdModel: r_s and r_0 must be >= 0");
    std::set<std::string> labels;
    for (const auto& b : branches) {
        if (!(b.l_m > 0.0) || !(b.c_m > 0.0))
            throw std::invalid_argument("MotionalBranch: l_m and c_m must be > 0");
        if (b.r_m < 0.0)
            throw std::invalid_argument("MotionalBranch: r_m must be >= 0");
        if (!labels.insert(b.label).second)
            throw std::invalid_argument("MbvdModel: duplicate branch label '" + b.label + "'");
    }
}

AdmittanceSweep admittance(const MbvdModel& model, const std::vector<double>& freqs,
                           double z_ref) {
    model.validate();
    AdmittanceSweep out;
    out.freqs = freqs;
    out.z_ref = z_ref;
    out.y.reserve(freqs.size());
    for (double f : freqs) {
        if (!(f > 0.0))
            throw std::invalid_argument("admittance: frequencies must be > 0");
        const double w = 2.0 * kPi * f;
        // Static branch: r_0 in series with c_0.
        const std::complex<double> jwc0(0.0, w * model.c_0);
        std::complex<double> yp = jwc0 / (1.0 + model.r_0 * jwc0);
        for (const auto& b : model.branches) {
            const std::complex<double> zb(b.r_m, w * b.l_m - 1.0 / (w * b.c_m));
            if (zb == std::complex<double>(0.0, 0.0)) {
                yp += kAdmittanceCap;
                continue;
            }
            yp += 1.0 / zb;
        }
        std::complex<double> y = yp / (1.0 + model.r_s * yp);
        if (double mag = std::abs(y); mag > kAdmittanceCap)
            y *= kAdmittanceCap / mag;
        out.y.push_back(y);
    }
    return out;
}

BranchResonance branch_resonance(const MotionalBranch& branch) {
    if (!(branch.l_m > 0.0) || !(branch.c_m > 0.0) || branch.r_m < 0.0)
        throw std::invalid_argument("branch_resonance: invalid branch");
    BranchResonance r;
    r.f_s = 1.0 / (2.0 * kPi * std::sqrt(branch.l_m * branch.c_m));
    r.q = branch.r_m > 0.0 ? std::sqrt(branch.l_m / branch.c_m) / branch.r_m
                           : std::numeric_limits<double>::infinity();
    return r;
}

MbvdModel synth_from_specs(double f_s, double kt2, double c_0, double q,
                           double r_s, double r_0, const std::string& label) {
    if (!(f_s > 0.0))
        throw std::invalid_argument("synth_from_specs: f_s must be > 0");
    if (!(kt2 > 0.0) || !(kt2 < 1.0))
        throw std::invalid_argument("synth_from_specs: kt2 must be in (0, 1)");
    if (!(c_0 > 0.0))
        throw std::invalid_argument("synth_from_specs: c_0 must be > 0");
    if (!(q > 0.0))
        throw std::invalid_argument("synth_from_specs: q must be > 0");
    if (r_s < 0.0 || r_0 < 0.0)
        throw std::invalid_argument("synth_from_specs: r_s and r_0 must be >= 0");

    MotionalBranch b;
    b.label = label;
    b.c_m = (8.0 / (kPi * kPi)) * kt2 * c_0;
    const double w = 2.0 * kPi * f_s;
    b.l_m = 1.0 / (w * w * b.c_m);
    b.r_m = w * b.l_m / q;

    MbvdModel m;
    m.r_s = r_s;
    m.r_0 = r_0;
    m.c_0 = c_0;
    m.branches.push_back(std::move(b));
    return m;
}

MbvdModel canonicalized(const MbvdModel& model) {
    MbvdModel out = model;
    std::stable_sort(out.branches.begin(), out.branches.end(),
                     [](const MotionalBranch& a, const MotionalBranch& b) {
                         return a.l_m * a.c_m > b.l_m * b.c_m;  // ascending f_s
                     });
    return out;
}

void to_json(nlohmann::json& j, const MotionalBranch& b) {
    j = {{"label", b.label}, {"r_m", b.r_m}, {"l_m", b.l_m}, {"c_m", b.c_m}};
}

void from_json(const nlohmann::json& j, MotionalBranch& b) {
    b.label = j.value("label", "");
    j.at("r_m").get_to(b.r_m);
    j.at("l_m").get_to(b.l_m);
    j.at("c_m").get_to(b.c_m);
}

void to_json(nlohmann::json& j, const MbvdModel& m) {
    j = {{"r_s", m.r_s}, {"r_0", m.r_0}, {"c_0", m.c_0}, {"branches", m.branches}};
}

void from_json(const nlohmann::json& j, MbvdModel& m) {
    j.at("r_s").get_to(m.r_s);
    j.at("r_0").get_to(m.r_0);
    j.at("c_0").get_to(m.c_0);
    m.branches = j.value("branches", std::vector<MotionalBranch>{});
    m.validate();
}

}  // namespace sawkit
