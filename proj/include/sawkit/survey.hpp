#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sawkit/metrics.hpp"

namespace sawkit {

// Design-side description of one fabricated device (metadata only; drives
// no computation).
struct DeviceDesign {
    std::string name;
    double lambda_nm = 0.0;
    double h_ln_over_lambda = 0.0;
    double aperture_lambdas = 0.0;
    int n_e = 0;
    int n_r = 0;
    double duty_factor = 0.0;  // in (0, 1)
    double electrode_thickness_nm = 0.0;

    void validate() const;
};

// One literature device for the figure-of-merit comparison.
struct SurveyEntry {
    std::string label;
    std::string technology;
    double f_s = 0.0;   // Hz
    double f_p = 0.0;   // Hz
    double q_max = 0.0;

    void validate() const;
};

struct SurveyRow {
    std::string label;
    double f_s = 0.0;
    double kt2 = 0.0;
    double q_max = 0.0;
    double fom = 0.0;
};

// Recomputes every entry's coupling from (f_s, f_p) under the unified
// definition, fom = kt2 * q_max, sorted by f_s. Throws ParseError naming
// the offending row when f_p <= f_s.
std::vector<SurveyRow> compare_survey(const std::vector<SurveyEntry>& entries);

// CSV: header "label,technology,fs_hz,fp_hz,qmax".
std::vector<SurveyEntry> parse_survey_csv(const std::string& text);
std::string write_survey_csv(const std::vector<SurveyRow>& rows);

// CSV: header "pin_dbm,response_db".
PowerSweep parse_power_csv(const std::string& text);

void to_json(nlohmann::json& j, const DeviceDesign& d);
void from_json(const nlohmann::json& j, DeviceDesign& d);

}  // namespace sawkit
