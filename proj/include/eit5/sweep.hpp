#pragma once

#include "eit5/observables.hpp"
#include "eit5/params.hpp"

#include <string>
#include <vector>

namespace eit5 {

enum class SweepAxis { delta_p, omega_b_rf, omega_c_rf, gamma_Cprime, delta_mu };

struct SweepConfig {
    AtomParams atom;
    FieldParams fields;  // base point; the swept axis overrides one entry per row
    PhysicalScaling scaling;
    SweepAxis axis = SweepAxis::delta_p;
    double start = -3.0;  // [gamma_ab]
    double stop = 3.0;    // [gamma_ab]
    int count = 601;
    Method method = Method::analytic;
    double sample_length = 1e-3;  // medium length for the delay output [m]

    void validate() const;  // throws std::invalid_argument on a bad range or parameters
};

struct SweepRow {
    double axis_value = 0.0;  // [gamma_ab]
    SpectrumPoint point;
    std::string error;  // empty when this point solved cleanly
};

// Named parameter sets for the bundled demonstration plots (fig2 ... fig8).
// Throws std::invalid_argument for unknown names.
SweepConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Flat `key = value` text, '#' starts a comment, unknown keys throw.  Values
// override the matching entries of `base`.
SweepConfig parse_config_text(const std::string& text, const SweepConfig& base);
SweepConfig load_config_file(const std::string& path, const SweepConfig& base);

std::string axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);
std::string method_name(Method method);
// Accepts analytic | solve | ode and the long forms linear-solve | time-domain.
Method parse_method(const std::string& name);

// One row per grid point, in grid order, bit-identical for a fixed config.
// Per-point solver failures are recorded in SweepRow::error and the sweep
// continues.  Parallelism is capped by the EIT5_THREADS environment variable.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// CSV with columns `delta_p, re_chi, im_chi, alpha, n, slope, vg_ratio`,
// preceded by an axis column when the sweep axis is not delta_p and followed
// by an error column when any row failed.  17 significant digits throughout.
std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows);

// JSON mirror of the CSV carrying the full configuration alongside the rows.
std::string sweep_json(const SweepConfig& config, const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace eit5
