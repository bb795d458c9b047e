#include "eit5/sweep.hpp"

#include "json.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace eit5 {

void SweepConfig::validate() const {
    atom.validate();
    fields.validate();
    scaling.validate();
    if (count < 2) throw std::invalid_argument("sweep: count must be at least 2");
    if (!(stop > start)) {
        throw std::invalid_argument("sweep: range must have stop > start (zero-width ranges are rejected)");
    }
    if ((axis == SweepAxis::omega_b_rf || axis == SweepAxis::omega_c_rf ||
         axis == SweepAxis::gamma_Cprime) && start < 0.0) {
        throw std::invalid_argument("sweep: " + axis_name(axis) + " cannot be negative");
    }
    if (sample_length <= 0.0) throw std::invalid_argument("sweep: sample_length must be > 0");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::delta_p: return "delta_p";
        case SweepAxis::omega_b_rf: return "omega_b_rf";
        case SweepAxis::omega_c_rf: return "omega_c_rf";
        case SweepAxis::gamma_Cprime: return "gamma_Cprime";
        case SweepAxis::delta_mu: return "delta_mu";
    }
    throw std::invalid_argument("unknown sweep axis");
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "delta_p") return SweepAxis::delta_p;
    if (name == "omega_b_rf") return SweepAxis::omega_b_rf;
    if (name == "omega_c_rf") return SweepAxis::omega_c_rf;
    if (name == "gamma_Cprime") return SweepAxis::gamma_Cprime;
    if (name == "delta_mu") return SweepAxis::delta_mu;
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

std::string method_name(Method method) {
    switch (method) {
        case Method::analytic: return "analytic";
        case Method::linear_solve: return "linear-solve";
        case Method::time_domain: return "time-domain";
    }
    throw std::invalid_argument("unknown method");
}

Method parse_method(const std::string& name) {
    if (name == "analytic") return Method::analytic;
    if (name == "solve" || name == "linear-solve" || name == "linear_solve") {
        return Method::linear_solve;
    }
    if (name == "ode" || name == "time-domain" || name == "time_domain") {
        return Method::time_domain;
    }
    throw std::invalid_argument("unknown method '" + name + "' (use analytic|solve|ode)");
}

SweepConfig preset_config(const std::string& name) {
    SweepConfig c;  // defaults: omega_mu = 2, omega_p = 1e-3, everything else off
    if (name == "fig2") {
        // Four-peak spectrum: Autler-Townes pair plus the narrow RF-induced pair.
        c.fields.omega_b_rf = 0.1;
        c.fields.omega_c_rf = 0.1;
        c.start = -3.0;
        c.stop = 3.0;
        c.count = 6001;
    } else if (name == "fig3") {
        // Narrow-feature amplitude versus the b-doublet RF drive at fixed probe detuning.
        c.axis = SweepAxis::omega_b_rf;
        c.fields.delta_p = 0.025;
        c.fields.omega_c_rf = 0.1;
        c.atom.gamma_C = 1e-3;
        c.atom.gamma_Cprime = 1e-3;
        c.start = 0.0;
        c.stop = 0.1;
        c.count = 201;
    } else if (name == "fig5") {
        // Strong-RF regime: six resolved absorption lines.
        c.fields.omega_b_rf = 2.2;
        c.fields.omega_c_rf = 1.8;
        c.start = -3.3;
        c.stop = 3.3;
        c.count = 6601;
    } else if (name == "fig6") {
        // Close-up on the narrow pair with c-doublet dephasing switched on.
        c.fields.omega_b_rf = 0.1;
        c.fields.omega_c_rf = 0.1;
        c.atom.gamma_Cprime = 1e-3;
        c.start = -0.2;
        c.stop = 0.2;
        c.count = 4001;
    } else if (name == "fig7") {
        // Slow-light close-up, weak RF and zero dephasing.
        c.fields.omega_b_rf = 6e-4;
        c.fields.omega_c_rf = 6e-4;
        c.start = -6e-4;
        c.stop = 6e-4;
        c.count = 31;
    } else if (name == "fig8") {
        // Slow-light close-up at stronger RF and moderate dephasing.
        c.fields.omega_b_rf = 0.12;
        c.fields.omega_c_rf = 0.12;
        c.atom.gamma_C = 6e-4;
        c.atom.gamma_Cprime = 6e-4;
        c.start = -0.24;
        c.stop = 0.24;
        c.count = 401;
    } else if (name == "fig4") {
        throw std::invalid_argument("preset 'fig4' is a level-scheme illustration with no sweep data");
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig5", "fig6", "fig7", "fig8"};
}

static std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

static double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value '" + value + "' for key '" + key + "'");
    }
}

SweepConfig parse_config_text(const std::string& text, const SweepConfig& base) {
    SweepConfig c = base;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }

        try {
            if (key == "gamma_a") c.atom.gamma_a = parse_number(key, value);
            else if (key == "gamma_ab_tilde") c.atom.gamma_ab_tilde = parse_number(key, value);
            else if (key == "gamma_C") c.atom.gamma_C = parse_number(key, value);
            else if (key == "gamma_Cprime") c.atom.gamma_Cprime = parse_number(key, value);
            else if (key == "gamma_bb_tilde") c.atom.gamma_bb_tilde = parse_number(key, value);
            else if (key == "omega_p") c.fields.omega_p = parse_number(key, value);
            else if (key == "omega_mu") c.fields.omega_mu = parse_number(key, value);
            else if (key == "omega_b_rf") c.fields.omega_b_rf = parse_number(key, value);
            else if (key == "omega_c_rf") c.fields.omega_c_rf = parse_number(key, value);
            else if (key == "delta_p") c.fields.delta_p = parse_number(key, value);
            else if (key == "delta_mu") c.fields.delta_mu = parse_number(key, value);
            else if (key == "delta_b") c.fields.delta_b = parse_number(key, value);
            else if (key == "delta_c") c.fields.delta_c = parse_number(key, value);
            else if (key == "prefactor") c.scaling.prefactor = parse_number(key, value);
            else if (key == "k_p") c.scaling.k_p = parse_number(key, value);
            else if (key == "omega_p_abs") c.scaling.omega_p_abs = parse_number(key, value);
            else if (key == "gamma_ab_si") c.scaling.gamma_ab_si = parse_number(key, value);
            else if (key == "axis") c.axis = parse_axis(value);
            else if (key == "start") c.start = parse_number(key, value);
            else if (key == "stop") c.stop = parse_number(key, value);
            else if (key == "count") c.count = static_cast<int>(parse_number(key, value));
            else if (key == "method") c.method = parse_method(value);
            else if (key == "sample_length") c.sample_length = parse_number(key, value);
            else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                                        e.what());
        }
    }
    return c;
}

SweepConfig load_config_file(const std::string& path, const SweepConfig& base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not readable: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), base);
}

static void apply_axis_value(SweepConfig& c, double value) {
    switch (c.axis) {
        case SweepAxis::delta_p: c.fields.delta_p = value; return;
        case SweepAxis::omega_b_rf: c.fields.omega_b_rf = value; return;
        case SweepAxis::omega_c_rf: c.fields.omega_c_rf = value; return;
        case SweepAxis::gamma_Cprime: c.atom.gamma_Cprime = value; return;
        case SweepAxis::delta_mu: c.fields.delta_mu = value; return;
    }
}

static unsigned thread_budget(int count) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("EIT5_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) {
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return std::min<unsigned>(n, static_cast<unsigned>(count));
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    config.validate();
    const int count = config.count;
    std::vector<SweepRow> rows(static_cast<std::size_t>(count));

    auto worker = [&config, &rows, count](unsigned first, unsigned stride) {
        for (int i = static_cast<int>(first); i < count; i += static_cast<int>(stride)) {
            SweepConfig local = config;
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            const double value = config.start + (config.stop - config.start) * t;
            apply_axis_value(local, value);
            SweepRow& row = rows[static_cast<std::size_t>(i)];
            row.axis_value = value;
            row.point.delta_p = local.fields.delta_p;
            try {
                row.point = compute_spectrum_point(local.atom, local.fields, local.scaling,
                                                   local.method, local.sample_length);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    const unsigned n_threads = thread_budget(count);
    if (n_threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t, n_threads);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

static std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

static std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        out += ch;
    }
    out += "\"";
    return out;
}

std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows) {
    const bool axis_column = config.axis != SweepAxis::delta_p;
    bool error_column = false;
    for (const SweepRow& row : rows) {
        if (!row.error.empty()) { error_column = true; break; }
    }

    std::string out;
    if (axis_column) out += axis_name(config.axis) + ", ";
    out += "delta_p, re_chi, im_chi, alpha, n, slope, vg_ratio";
    if (error_column) out += ", error";
    out += "\n";

    for (const SweepRow& row : rows) {
        if (axis_column) out += fmt17(row.axis_value) + ", ";
        out += fmt17(row.point.delta_p) + ", ";
        out += fmt17(row.point.chi.real()) + ", ";
        out += fmt17(row.point.chi.imag()) + ", ";
        out += fmt17(row.point.alpha) + ", ";
        out += fmt17(row.point.n) + ", ";
        out += fmt17(row.point.slope) + ", ";
        out += fmt17(row.point.vg_ratio);
        if (error_column) out += ", " + csv_quote(row.error);
        out += "\n";
    }
    return out;
}

std::string sweep_json(const SweepConfig& config, const std::vector<SweepRow>& rows) {
    nlohmann::json j;
    j["config"] = {
        {"gamma_a", config.atom.gamma_a},
        {"gamma_ab_tilde", config.atom.gamma_ab_tilde},
        {"gamma_C", config.atom.gamma_C},
        {"gamma_Cprime", config.atom.gamma_Cprime},
        {"gamma_bb_tilde", config.atom.gamma_bb_tilde},
        {"omega_p", config.fields.omega_p},
        {"omega_mu", config.fields.omega_mu},
        {"omega_b_rf", config.fields.omega_b_rf},
        {"omega_c_rf", config.fields.omega_c_rf},
        {"delta_p", config.fields.delta_p},
        {"delta_mu", config.fields.delta_mu},
        {"delta_b", config.fields.delta_b},
        {"delta_c", config.fields.delta_c},
        {"prefactor", config.scaling.prefactor},
        {"k_p", config.scaling.k_p},
        {"omega_p_abs", config.scaling.omega_p_abs},
        {"gamma_ab_si", config.scaling.gamma_ab_si},
        {"axis", axis_name(config.axis)},
        {"start", config.start},
        {"stop", config.stop},
        {"count", config.count},
        {"method", method_name(config.method)},
        {"sample_length", config.sample_length},
    };
    nlohmann::json data = nlohmann::json::array();
    for (const SweepRow& row : rows) {
        nlohmann::json r = {
            {"delta_p", row.point.delta_p},
            {"re_chi", row.point.chi.real()},
            {"im_chi", row.point.chi.imag()},
            {"alpha", row.point.alpha},
            {"n", row.point.n},
            {"slope", row.point.slope},
            {"vg_ratio", row.point.vg_ratio},
            {"delay", row.point.delay},
        };
        if (config.axis != SweepAxis::delta_p) r[axis_name(config.axis)] = row.axis_value;
        if (!row.error.empty()) r["error"] = row.error;
        data.push_back(std::move(r));
    }
    j["rows"] = std::move(data);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace eit5
