#include "sawkit/survey.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "sawkit/errors.hpp"

namespace sawkit {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, ','))
        out.push_back(field);
    return out;
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double csv_number(const std::string& field, std::size_t line) {
    const std::string tok = trim(field);
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (tok.empty() || end != begin + tok.size() || !std::isfinite(v))
        throw ParseError("invalid number '" + tok + "'", line);
    return v;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void DeviceDesign::validate() const {
    if (name.empty())
        throw std::invalid_argument("DeviceDesign: name must not be empty");
    if (!(lambda_nm > 0.0) || !(h_ln_over_lambda > 0.0) || !(aperture_lambdas > 0.0) ||
        n_e <= 0 || n_r <= 0 || !(electrode_thickness_nm > 0.0))
        throw std::invalid_argument("DeviceDesign: all dimensions must be positive");
    if (!(duty_factor > 0.0) || !(duty_factor < 1.0))
        throw std::invalid_argument("DeviceDesign: duty_factor must be in (0, 1)");
}

void SurveyEntry::validate() const {
    if (!(f_s > 0.0) || !(f_p > f_s))
        throw std::invalid_argument("SurveyEntry '" + label + "': requires f_p > f_s > 0");
    if (!(q_max > 0.0))
        throw std::invalid_argument("SurveyEntry '" + label + "': q_max must be > 0");
}

std::vector<SurveyRow> compare_survey(const std::vector<SurveyEntry>& entries) {
    std::vector<SurveyRow> rows;
    rows.reserve(entries.size());
    for (const auto& e : entries) {
        if (!(e.f_p > e.f_s))
            throw ParseError("survey row '" + e.label + "': f_p <= f_s");
        e.validate();
        SurveyRow r;
        r.label = e.label;
        r.f_s = e.f_s;
        r.kt2 = kt2_from_freqs(e.f_s, e.f_p);
        r.q_max = e.q_max;
        r.fom = fom(r.kt2, r.q_max);
        rows.push_back(std::move(r));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SurveyRow& a, const SurveyRow& b) { return a.f_s < b.f_s; });
    return rows;
}

std::vector<SurveyEntry> parse_survey_csv(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    std::vector<SurveyEntry> entries;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(stream, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        auto fields = split_csv(line);
        if (!header_seen) {
            if (fields.size() < 5 || trim(fields[0]) != "label")
                throw ParseError("expected header 'label,technology,fs_hz,fp_hz,qmax'", lineno);
            header_seen = true;
            continue;
        }
        if (fields.size() != 5)
            throw ParseError("expected 5 columns, got " + std::to_string(fields.size()), lineno);
        SurveyEntry e;
        e.label = trim(fields[0]);
        e.technology = trim(fields[1]);
        e.f_s = csv_number(fields[2], lineno);
        e.f_p = csv_number(fields[3], lineno);
        e.q_max = csv_number(fields[4], lineno);
        entries.push_back(std::move(e));
    }
    if (!header_seen)
        throw ParseError("empty survey file");
    return entries;
}

std::string write_survey_csv(const std::vector<SurveyRow>& rows) {
    std::ostringstream out;
    out << "label,fs_hz,kt2,qmax,fom\n";
    for (const auto& r : rows)
        out << r.label << ',' << fmt(r.f_s) << ',' << fmt(r.kt2) << ',' << fmt(r.q_max)
            << ',' << fmt(r.fom) << '\n';
    return out.str();
}

PowerSweep parse_power_csv(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    PowerSweep sweep;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(stream, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        auto fields = split_csv(line);
        if (!header_seen) {
            if (fields.size() < 2 || trim(fields[0]) != "pin_dbm")
                throw ParseError("expected header 'pin_dbm,response_db'", lineno);
            header_seen = true;
            continue;
        }
        if (fields.size() != 2)
            throw ParseError("expected 2 columns, got " + std::to_string(fields.size()), lineno);
        sweep.p_in.push_back(csv_number(fields[0], lineno));
        sweep.response.push_back(csv_number(fields[1], lineno));
    }
    sweep.validate();
    return sweep;
}

void to_json(nlohmann::json& j, const DeviceDesign& d) {
    j = {{"name", d.name},
         {"lambda_nm", d.lambda_nm},
         {"h_ln_over_lambda", d.h_ln_over_lambda},
         {"aperture_lambdas", d.aperture_lambdas},
         {"n_e", d.n_e},
         {"n_r", d.n_r},
         {"duty_factor", d.duty_factor},
         {"electrode_thickness_nm", d.electrode_thickness_nm}};
}

void from_json(const nlohmann::json& j, DeviceDesign& d) {
    j.at("name").get_to(d.name);
    j.at("lambda_nm").get_to(d.lambda_nm);
    j.at("h_ln_over_lambda").get_to(d.h_ln_over_lambda);
    j.at("aperture_lambdas").get_to(d.aperture_lambdas);
    j.at("n_e").get_to(d.n_e);
    j.at("n_r").get_to(d.n_r);
    j.at("duty_factor").get_to(d.duty_factor);
    j.at("electrode_thickness_nm").get_to(d.electrode_thickness_nm);
    d.validate();
}

}  // namespace sawkit
