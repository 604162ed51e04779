// Command-line front end for the resonator analysis library: Touchstone
// parsing, S->Y conversion, mBVD fitting, metric extraction, model
// synthesis, survey comparison, and the Love-wave surrogate solver.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sawkit/dispersion.hpp"
#include "sawkit/errors.hpp"
#include "sawkit/fitting.hpp"
#include "sawkit/mbvd.hpp"
#include "sawkit/metrics.hpp"
#include "sawkit/network.hpp"
#include "sawkit/survey.hpp"
#include "sawkit/touchstone.hpp"

namespace {

using nlohmann::json;
using namespace sawkit;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write file '" + path + "'");
    out << content;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_file(path, content);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::pair<double, double> parse_band(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf", &lo, &hi) != 2 || !(hi > lo) || !(lo > 0.0))
        throw ParseError("invalid band '" + spec + "' (expected lo:hi in Hz)");
    return {lo, hi};
}

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &g.lo, &g.hi, &g.n) != 3 || g.n < 2 ||
        !(g.hi > g.lo) || g.lo < 0.0)
        throw ParseError("invalid grid '" + spec + "' (expected lo:hi:n)");
    return g;
}

FitOptions load_fit_options(const std::string& config_path) {
    FitOptions opts;
    if (config_path.empty())
        return opts;
    const json cfg = json::parse(read_file(config_path));
    opts.max_iterations = cfg.value("max_iterations", opts.max_iterations);
    opts.relative_cost_tolerance =
        cfg.value("relative_cost_tolerance", opts.relative_cost_tolerance);
    if (cfg.contains("weight_mode")) {
        const std::string mode = cfg.at("weight_mode").get<std::string>();
        if (mode == "uniform")
            opts.weight_mode = WeightMode::Uniform;
        else if (mode == "inverse_magnitude")
            opts.weight_mode = WeightMode::InverseMagnitude;
        else
            throw ParseError("unknown weight_mode '" + mode + "' in config");
    }
    if (cfg.contains("branch_count"))
        opts.branch_count = cfg.at("branch_count").get<int>();
    opts.validate();
    return opts;
}

std::string admittance_csv(const AdmittanceSweep& y) {
    std::ostringstream out;
    out << "freq_hz,re_y,im_y\n";
    for (std::size_t i = 0; i < y.size(); ++i)
        out << fmt(y.freqs[i]) << ',' << fmt(y.y[i].real()) << ',' << fmt(y.y[i].imag()) << '\n';
    return out.str();
}

std::string bodeq_csv(const std::vector<BodeQPoint>& points) {
    std::ostringstream out;
    out << "freq_hz,q\n";
    for (const auto& p : points)
        out << fmt(p.freq) << ',' << fmt(p.q) << '\n';
    return out.str();
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"SH-SAW resonator measurement analysis toolkit"};
    app.require_subcommand(1);

    // parse
    auto* cmd_parse = app.add_subcommand("parse", "Validate a .s1p file and echo it");
    std::string parse_file;
    std::string parse_format = "RI";
    cmd_parse->add_option("file", parse_file, "Touchstone .s1p file")->required();
    cmd_parse->add_option("--format", parse_format, "Echo format: RI, MA or DB")
        ->check(CLI::IsMember({"RI", "MA", "DB"}));

    // y
    auto* cmd_y = app.add_subcommand("y", "Convert S11 to admittance, emit CSV");
    std::string y_file, y_csv;
    cmd_y->add_option("file", y_file, "Touchstone .s1p file")->required();
    cmd_y->add_option("--csv", y_csv, "Output CSV path (stdout when omitted)");

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "Fit an mBVD model to a measured sweep");
    std::string fit_file, fit_report, fit_config, fit_design, fit_curves_dir;
    int fit_branches = -1;
    bool fit_timestamp = false;
    cmd_fit->add_option("file", fit_file, "Touchstone .s1p file")->required();
    cmd_fit->add_option("--branches", fit_branches, "Branch-count override for seeding");
    cmd_fit->add_option("--report", fit_report, "Report JSON path (stdout when omitted)");
    cmd_fit->add_option("--config", fit_config, "FitOptions defaults (JSON)");
    cmd_fit->add_option("--design", fit_design, "DeviceDesign JSON to embed in the report");
    cmd_fit->add_option("--curves-dir", fit_curves_dir, "Directory for conductance/Bode-Q CSVs");
    cmd_fit->add_flag("--timestamp", fit_timestamp, "Stamp the report with generation time");

    // metrics
    auto* cmd_metrics = app.add_subcommand("metrics", "Extract performance figures");
    std::string metrics_file, metrics_band, metrics_config, metrics_out;
    int metrics_branches = -1;
    bool metrics_timestamp = false;
    cmd_metrics->add_option("file", metrics_file, ".s1p sweep or model .json")->required();
    cmd_metrics->add_option("--band", metrics_band, "Evaluation band lo:hi in Hz");
    cmd_metrics->add_option("--branches", metrics_branches, "Branch-count override for seeding");
    cmd_metrics->add_option("--config", metrics_config, "FitOptions defaults (JSON)");
    cmd_metrics->add_option("--out", metrics_out, "Output JSON path (stdout when omitted)");
    cmd_metrics->add_flag("--timestamp", metrics_timestamp, "Stamp the output with generation time");

    // bodeq
    auto* cmd_bodeq = app.add_subcommand("bodeq", "Bode-Q curve from measured S11");
    std::string bodeq_file, bodeq_csv_path;
    cmd_bodeq->add_option("file", bodeq_file, "Touchstone .s1p file")->required();
    cmd_bodeq->add_option("--csv", bodeq_csv_path, "Output CSV path (stdout when omitted)");

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "Synthesize a single-branch mBVD model");
    double synth_fs = 0.0, synth_kt2 = 0.0, synth_c0 = 0.0, synth_q = 0.0;
    double synth_rs = 0.0, synth_r0 = 0.0;
    std::string synth_out;
    cmd_synth->add_option("--fs", synth_fs, "Series resonance, Hz")->required();
    cmd_synth->add_option("--kt2", synth_kt2, "Coupling, fraction in (0,1)")->required();
    cmd_synth->add_option("--c0", synth_c0, "Static capacitance, F")->required();
    cmd_synth->add_option("--q", synth_q, "Branch quality factor")->required();
    cmd_synth->add_option("--rs", synth_rs, "Series parasitic resistance, ohms");
    cmd_synth->add_option("--r0", synth_r0, "Static-branch loss, ohms");
    cmd_synth->add_option("--out", synth_out, "Model JSON path (stdout when omitted)");

    // p1db
    auto* cmd_p1db = app.add_subcommand("p1db", "1 dB compression point from a power sweep");
    std::string p1db_file;
    cmd_p1db->add_option("file", p1db_file, "Power-sweep CSV (pin_dbm,response_db)")->required();

    // compare
    auto* cmd_compare = app.add_subcommand("compare", "Survey comparison with unified coupling");
    std::string compare_file, compare_out;
    cmd_compare->add_option("file", compare_file, "Survey CSV")->required();
    cmd_compare->add_option("--out", compare_out, "Output CSV path (stdout when omitted)");

    // dispersion
    auto* cmd_disp = app.add_subcommand("dispersion", "Love-wave surrogate dispersion curve");
    double vl = 0.0, ml = 0.0, vs = 0.0, ms = 0.0;
    double vl_s = 0.0, ml_s = 0.0, vs_s = 0.0, ms_s = 0.0;
    std::string disp_grid, disp_csv;
    cmd_disp->add_option("--v-layer", vl, "Film shear velocity, m/s")->required();
    cmd_disp->add_option("--mu-layer", ml, "Film shear modulus, Pa")->required();
    cmd_disp->add_option("--v-sub", vs, "Substrate shear velocity, m/s")->required();
    cmd_disp->add_option("--mu-sub", ms, "Substrate shear modulus, Pa")->required();
    auto* o_vls = cmd_disp->add_option("--v-layer-short", vl_s, "Shorted-surface film velocity");
    auto* o_mls = cmd_disp->add_option("--mu-layer-short", ml_s, "Shorted-surface film modulus");
    auto* o_vss = cmd_disp->add_option("--v-sub-short", vs_s, "Shorted-surface substrate velocity");
    auto* o_mss = cmd_disp->add_option("--mu-sub-short", ms_s, "Shorted-surface substrate modulus");
    cmd_disp->add_option("--grid", disp_grid, "h/lambda grid lo:hi:n")->required();
    cmd_disp->add_option("--csv", disp_csv, "Output CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    if (cmd_parse->parsed()) {
        const auto sweep = parse_touchstone(read_file(parse_file));
        const TouchstoneFormat f = parse_format == "MA"   ? TouchstoneFormat::MA
                                   : parse_format == "DB" ? TouchstoneFormat::DB
                                                          : TouchstoneFormat::RI;
        std::cout << write_touchstone(sweep, f);
        return kExitOk;
    }

    if (cmd_y->parsed()) {
        const auto y = s_to_y(parse_touchstone(read_file(y_file)));
        emit(y_csv, admittance_csv(y));
        return kExitOk;
    }

    if (cmd_fit->parsed()) {
        const auto sweep = parse_touchstone(read_file(fit_file));
        const auto y = s_to_y(sweep);
        FitOptions opts = load_fit_options(fit_config);
        if (fit_branches >= 0)
            opts.branch_count = fit_branches;
        const auto seed = seed_model(y, opts.branch_count);
        const auto result = fit(y, seed, opts);

        json report;
        report["fit_result"] = result;
        report["metrics"] = extract_metrics(y, result.model, sweep.z_ref);
        if (!fit_design.empty())
            report["design"] = json::parse(read_file(fit_design)).get<DeviceDesign>();
        if (!fit_curves_dir.empty()) {
            const std::string g_path = fit_curves_dir + "/conductance.csv";
            const std::string q_path = fit_curves_dir + "/bodeq.csv";
            write_file(g_path, admittance_csv(y));
            write_file(q_path, bodeq_csv(bode_q(sweep)));
            report["curves"] = {{"conductance", g_path}, {"bode_q", q_path}};
        }
        if (fit_timestamp)
            report["generated_at"] = timestamp_now();
        emit(fit_report, report.dump(2) + "\n");
        return kExitOk;
    }

    if (cmd_metrics->parsed()) {
        ResonatorMetrics metrics;
        if (ends_with(metrics_file, ".json")) {
            const MbvdModel model = json::parse(read_file(metrics_file)).get<MbvdModel>();
            const auto band = metrics_band.empty() ? default_qmax_band(model)
                                                   : parse_band(metrics_band);
            std::vector<double> freqs(2001);
            for (std::size_t i = 0; i < freqs.size(); ++i)
                freqs[i] = band.first + (band.second - band.first) * double(i) / 2000.0;
            metrics = extract_metrics(admittance(model, freqs), model);
        } else {
            const auto sweep = parse_touchstone(read_file(metrics_file));
            auto y = s_to_y(sweep);
            if (!metrics_band.empty()) {
                const auto band = parse_band(metrics_band);
                AdmittanceSweep clipped;
                clipped.z_ref = y.z_ref;
                for (std::size_t i = 0; i < y.size(); ++i)
                    if (y.freqs[i] >= band.first && y.freqs[i] <= band.second) {
                        clipped.freqs.push_back(y.freqs[i]);
                        clipped.y.push_back(y.y[i]);
                    }
                y = std::move(clipped);
            }
            FitOptions opts = load_fit_options(metrics_config);
            if (metrics_branches >= 0)
                opts.branch_count = metrics_branches;
            const auto result = fit(y, seed_model(y, opts.branch_count), opts);
            metrics = extract_metrics(y, result.model, sweep.z_ref);
        }
        json doc = metrics;
        if (metrics_timestamp)
            doc["generated_at"] = timestamp_now();
        emit(metrics_out, doc.dump(2) + "\n");
        return kExitOk;
    }

    if (cmd_bodeq->parsed()) {
        const auto sweep = parse_touchstone(read_file(bodeq_file));
        emit(bodeq_csv_path, bodeq_csv(bode_q(sweep)));
        return kExitOk;
    }

    if (cmd_synth->parsed()) {
        const auto model = synth_from_specs(synth_fs, synth_kt2, synth_c0, synth_q,
                                            synth_rs, synth_r0);
        emit(synth_out, json(model).dump(2) + "\n");
        return kExitOk;
    }

    if (cmd_p1db->parsed()) {
        const auto sweep = parse_power_csv(read_file(p1db_file));
        const auto result = p1db(sweep);
        json doc;
        doc["p1db_dbm"] = result ? json(*result) : json(nullptr);
        std::cout << doc.dump() << '\n';
        return kExitOk;
    }

    if (cmd_compare->parsed()) {
        const auto rows = compare_survey(parse_survey_csv(read_file(compare_file)));
        emit(compare_out, write_survey_csv(rows));
        return kExitOk;
    }

    if (cmd_disp->parsed()) {
        LayeredStack open{vl, ml, vs, ms};
        const GridSpec g = parse_grid(disp_grid);
        std::vector<double> grid(g.n);
        for (int i = 0; i < g.n; ++i)
            grid[i] = g.lo + (g.hi - g.lo) * double(i) / double(g.n - 1);

        const bool shorted = o_vls->count() || o_mls->count() || o_vss->count() || o_mss->count();
        std::ostringstream out;
        if (shorted) {
            LayeredStack sh{o_vls->count() ? vl_s : vl, o_mls->count() ? ml_s : ml,
                            o_vss->count() ? vs_s : vs, o_mss->count() ? ms_s : ms};
            out << "h_over_lambda,kint2\n";
            for (const auto& [h, k] : kint2_curve(open, sh, grid))
                out << fmt(h) << ',' << fmt(k) << '\n';
        } else {
            out << "h_over_lambda,velocity_mps\n";
            for (double h : grid)
                out << fmt(h) << ',' << fmt(love_velocity(open, h)) << '\n';
        }
        emit(disp_csv, out.str());
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
