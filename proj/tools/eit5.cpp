#include "eit5/analytic.hpp"
#include "eit5/dressing.hpp"
#include "eit5/dynamics.hpp"
#include "eit5/features.hpp"
#include "eit5/observables.hpp"
#include "eit5/steady_state.hpp"
#include "eit5/sweep.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitSolverDegeneracy = 2;

struct SweepOptions {
    std::string config_path;
    std::string preset;
    std::string method;
    std::string out_path;
    std::string json_path;
};

struct FeatureOptions {
    std::string in_path;
    std::string out_path;
    std::string config_path;
    std::string preset;
    double min_prominence = 1e-3;
};

eit5::SweepConfig assemble_config(const std::string& preset, const std::string& config_path,
                                  const std::string& method) {
    eit5::SweepConfig config;
    if (!preset.empty()) config = eit5::preset_config(preset);
    if (!config_path.empty()) config = eit5::load_config_file(config_path, config);
    if (!method.empty()) config.method = eit5::parse_method(method);
    config.validate();
    return config;
}

int run_sweep_command(const SweepOptions& opt) {
    const eit5::SweepConfig config = assemble_config(opt.preset, opt.config_path, opt.method);
    const std::vector<eit5::SweepRow> rows = eit5::run_sweep(config);

    std::size_t failed = 0;
    for (const eit5::SweepRow& row : rows) {
        if (!row.error.empty()) ++failed;
    }

    eit5::write_text_file(opt.out_path, eit5::sweep_csv(config, rows));
    if (!opt.json_path.empty()) {
        eit5::write_text_file(opt.json_path, eit5::sweep_json(config, rows));
    }

    std::printf("wrote %zu rows to %s (%zu failed points)\n", rows.size(), opt.out_path.c_str(),
                failed);
    if (failed == rows.size()) {
        std::fprintf(stderr, "error: every sweep point failed; first error: %s\n",
                     rows.front().error.c_str());
        return kExitSolverDegeneracy;
    }
    return kExitOk;
}

// Splits one CSV line on commas, honoring double-quoted fields, and trims
// surrounding whitespace.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    for (std::string& f : fields) {
        const std::size_t b = f.find_first_not_of(" \t\r");
        const std::size_t e = f.find_last_not_of(" \t\r");
        f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

int run_features_command(const FeatureOptions& opt) {
    std::ifstream in(opt.in_path);
    if (!in) throw std::invalid_argument("input not readable: " + opt.in_path);

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("input is empty: " + opt.in_path);
    const std::vector<std::string> header = split_csv_line(line);
    std::size_t col_x = header.size(), col_y = header.size(), col_err = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "delta_p") col_x = i;
        if (header[i] == "im_chi") col_y = i;
        if (header[i] == "error") col_err = i;
    }
    if (col_x == header.size() || col_y == header.size()) {
        throw std::invalid_argument("input lacks delta_p/im_chi columns: " + opt.in_path);
    }

    std::vector<double> x, y;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() <= std::max(col_x, col_y)) continue;
        if (col_err < fields.size() && !fields[col_err].empty()) continue;
        x.push_back(std::stod(fields[col_x]));
        y.push_back(std::stod(fields[col_y]));
    }

    eit5::NarrowResonancePair predictions;
    bool have_predictions = false;
    if (!opt.preset.empty() || !opt.config_path.empty()) {
        const eit5::SweepConfig config = assemble_config(opt.preset, opt.config_path, "");
        predictions = eit5::narrow_resonances(config.atom, config.fields);
        have_predictions = true;
    }

    const eit5::FeatureReport report = eit5::extract_features(
        x, y, opt.min_prominence, have_predictions ? &predictions : nullptr);

    nlohmann::json j;
    j["input"] = opt.in_path;
    j["min_prominence"] = opt.min_prominence;
    nlohmann::json peaks = nlohmann::json::array();
    for (const eit5::Peak& p : report.peaks) {
        peaks.push_back({{"center", p.center},
                         {"height", p.height},
                         {"fwhm", p.fwhm},
                         {"prominence", p.prominence},
                         {"baseline", p.baseline},
                         {"width_found", p.width_found},
                         {"under_resolved", p.under_resolved}});
    }
    j["peaks"] = std::move(peaks);
    if (have_predictions) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const eit5::FeaturePairing& p : report.pairings) {
            pairs.push_back({{"predicted_center", p.predicted.center},
                             {"predicted_fwhm", p.predicted.fwhm},
                             {"predicted_height", p.predicted.height},
                             {"matched", p.matched},
                             {"measured_center", p.measured.center},
                             {"center_error", p.center_error},
                             {"fwhm_rel_error", p.fwhm_rel_error},
                             {"height_rel_error", p.height_rel_error}});
        }
        j["pairings"] = std::move(pairs);
    }
    eit5::write_text_file(opt.out_path, j.dump(2) + "\n");
    std::printf("wrote %zu peaks to %s\n", report.peaks.size(), opt.out_path.c_str());
    return kExitOk;
}

bool report(const char* name, bool ok, double measured) {
    std::printf("%-44s %s  (%.3e)\n", name, ok ? "PASS" : "FAIL", measured);
    return ok;
}

// Cross-checks the closed form, the direct linear solve, and the time-domain
// integration against each other on a small representative grid.
int run_selftest() {
    bool all_ok = true;

    eit5::AtomParams atom;
    eit5::FieldParams fields;
    fields.omega_mu = 2.0;
    fields.omega_b_rf = 0.1;
    fields.omega_c_rf = 0.1;

    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        fields.delta_p = -3.0 + 0.3 * i;
        const eit5::cplx a = eit5::chi_by_method(atom, fields, eit5::Method::analytic);
        const eit5::cplx s = eit5::chi_by_method(atom, fields, eit5::Method::linear_solve);
        worst = std::max(worst, std::abs(a - s));
    }
    all_ok &= report("closed form vs linear solve", worst < 1e-10, worst);

    worst = 0.0;
    for (double dp : {0.05, 0.5, 1.0}) {
        fields.delta_p = dp;
        const eit5::cplx s = eit5::chi_by_method(atom, fields, eit5::Method::linear_solve);
        const eit5::cplx t = eit5::chi_by_method(atom, fields, eit5::Method::time_domain);
        worst = std::max(worst, std::abs(s - t));
    }
    all_ok &= report("linear solve vs time domain", worst < 1e-8, worst);

    eit5::AtomParams damped = atom;
    damped.gamma_bb_tilde = 0.01;
    eit5::FieldParams rf_only;
    rf_only.omega_b_rf = 1.0;
    const eit5::BBManifoldState bb =
        eit5::bb_manifold_steady_state(damped, eit5::make_dressed_frame(rf_only));
    const double bb_err = std::abs(bb.rho_BB - 0.5) + std::abs(bb.rho_BpBp - 0.5) +
                          std::abs(bb.rho_BBp) + std::abs(bb.rho_BpB);
    all_ok &= report("equal dressed populations at resonance", bb_err < 1e-12, bb_err);

    fields.delta_p = 0.05;
    const eit5::cplx via_solve = eit5::chi_linear_solve(atom, fields);
    const eit5::cplx via_ode = eit5::chi_time_domain(atom, fields);
    const double ode_err = std::abs(via_solve - via_ode);
    all_ok &= report("steady state reached by integration", ode_err < 1e-10, ode_err);

    const eit5::DressingResult d = eit5::dressing_angles(3.0, 4.0);
    const double dress_err =
        std::abs(d.omega_eff - 5.0) + std::abs(d.theta - std::atan2(std::sqrt(0.2), std::sqrt(0.8)));
    all_ok &= report("dressing angle and splitting", dress_err < 1e-12, dress_err);

    std::printf("selftest: %s\n", all_ok ? "all checks passed" : "FAILURES above");
    return all_ok ? kExitOk : kExitSolverDegeneracy;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear response of a five-level atom with RF-dressed ground doublets"};
    app.require_subcommand(1);

    SweepOptions sweep_opt;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV/JSON");
    sweep->add_option("--config", sweep_opt.config_path, "Flat key = value config file");
    sweep->add_option("--preset", sweep_opt.preset, "Named parameter set (fig2 ... fig8)");
    sweep->add_option("--method", sweep_opt.method, "analytic | solve | ode");
    sweep->add_option("--out", sweep_opt.out_path, "Output CSV path")->required();
    sweep->add_option("--json", sweep_opt.json_path, "Optional JSON mirror path");

    FeatureOptions feat_opt;
    CLI::App* features = app.add_subcommand("features", "Extract peaks and widths from a sweep CSV");
    features->add_option("--in", feat_opt.in_path, "Input CSV from `sweep`")->required();
    features->add_option("--out", feat_opt.out_path, "Output JSON report path")->required();
    features->add_option("--min-prominence", feat_opt.min_prominence,
                         "Ignore maxima less prominent than this");
    features->add_option("--config", feat_opt.config_path,
                         "Config file for predicted-feature pairing");
    features->add_option("--preset", feat_opt.preset, "Preset for predicted-feature pairing");

    CLI::App* selftest = app.add_subcommand("selftest", "Cross-validate the solver paths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (sweep->parsed()) return run_sweep_command(sweep_opt);
        if (features->parsed()) return run_features_command(feat_opt);
        if (selftest->parsed()) return run_selftest();
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolverDegeneracy;
    }
    return kExitOk;
}
