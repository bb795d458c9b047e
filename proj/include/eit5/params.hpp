#pragma once

#include <stdexcept>
#include <string>

namespace eit5 {

// All rates, Rabi frequencies, and detunings are stored in units of the
// optical coherence decay rate gamma_ab unless noted otherwise.  Conversion
// to physical units happens only at the PhysicalScaling boundary.

struct AtomParams {
    double gamma_a = 6.0;           // excited-state total spontaneous emission rate [gamma_ab]
    double gamma_ab_tilde = 0.0;    // pure dephasing between |a> and the b-doublet [gamma_ab]
    double gamma_C = 0.0;           // dephasing between |c> and the b-doublet [gamma_ab]
    double gamma_Cprime = 0.0;      // dephasing between |c'> and the b-doublet [gamma_ab]
    double gamma_bb_tilde = 0.0;    // intra-b-doublet pure dephasing [gamma_ab]

    // Total optical coherence decay rate: gamma_ab = gamma_a/6 + gamma_ab_tilde.
    // With the default gamma_a = 6 this is exactly 1, the internal unit.
    double gamma_ab() const { return gamma_a / 6.0 + gamma_ab_tilde; }

    void validate() const {
        if (gamma_a < 0.0 || gamma_ab_tilde < 0.0 || gamma_C < 0.0 ||
            gamma_Cprime < 0.0 || gamma_bb_tilde < 0.0) {
            throw std::invalid_argument("AtomParams: all rates must be >= 0");
        }
        if (gamma_ab() <= 0.0) {
            throw std::invalid_argument("AtomParams: derived gamma_ab must be > 0");
        }
    }
};

struct FieldParams {
    double omega_p = 1e-3;     // probe Rabi frequency [gamma_ab]
    double omega_mu = 2.0;     // control Rabi frequency [gamma_ab]
    double omega_b_rf = 0.0;   // RF Rabi frequency coupling |b> <-> |b'> [gamma_ab]
    double omega_c_rf = 0.0;   // RF Rabi frequency coupling |c> <-> |c'> [gamma_ab]
    double delta_p = 0.0;      // probe detuning, omega_a - omega_b - nu_p [gamma_ab]
    double delta_mu = 0.0;     // control detuning, omega_a - omega_c - nu_mu [gamma_ab]
    double delta_b = 0.0;      // RF detuning, omega_b' - omega_b - nu_b [gamma_ab]
    double delta_c = 0.0;      // RF detuning, omega_c' - omega_c - nu_c [gamma_ab]

    // The linear-response model assumes a weak probe; flag (not error) when
    // omega_p is no longer small against gamma_ab.
    bool weak_probe_ok(double gamma_ab) const { return omega_p < 0.1 * gamma_ab; }

    void validate() const {
        if (omega_p < 0.0 || omega_mu < 0.0 || omega_b_rf < 0.0 || omega_c_rf < 0.0) {
            throw std::invalid_argument("FieldParams: Rabi frequencies must be >= 0");
        }
    }
};

struct DressedFrame {
    double theta_b = 0.0;       // b-doublet mixing angle [rad], in [0, pi/2]
    double theta_c = 0.0;       // c-doublet mixing angle [rad], in [0, pi/2]
    double omega_b_eff = 0.0;   // sqrt(delta_b^2 + omega_b_rf^2) [gamma_ab]
    double omega_c_eff = 0.0;   // sqrt(delta_c^2 + omega_c_rf^2) [gamma_ab]
    bool b_degenerate = false;  // delta_b = omega_b_rf = 0: undressed limit taken
    bool c_degenerate = false;  // delta_c = omega_c_rf = 0: undressed limit taken
};

// Physical-unit conversion constants.  Defaults are chosen so |chi| << 1 and
// are configurable; the reduced-unit results never depend on them.
struct PhysicalScaling {
    double prefactor = 1e-4;         // 2*sigma(r)*N*D_ab^2/(eps0*hbar*gamma_ab_si): chi = prefactor * chi_reduced
    double k_p = 8.05e6;             // probe wavenumber [1/m]
    double omega_p_abs = 2.414e15;   // absolute probe angular frequency [rad/s]
    double gamma_ab_si = 1e7 / 6.0;  // physical value of one gamma_ab unit [rad/s]

    void validate() const {
        if (prefactor <= 0.0 || k_p <= 0.0 || omega_p_abs <= 0.0 || gamma_ab_si <= 0.0) {
            throw std::invalid_argument("PhysicalScaling: all fields must be > 0");
        }
    }
};

inline constexpr double speed_of_light = 2.99792458e8;  // [m/s]

}  // namespace eit5
