#pragma once

#include "eit5/linalg.hpp"
#include "eit5/params.hpp"

#include <functional>

namespace eit5 {

enum class Method { analytic, linear_solve, time_domain };

// Reduced susceptibility by the chosen computational path.  All three agree
// within solver tolerances; they exist to cross-validate each other.
cplx chi_by_method(const AtomParams& atom, const FieldParams& fields, Method method);

struct SpectrumPoint {
    double delta_p = 0.0;   // [gamma_ab]
    cplx chi{0.0, 0.0};     // reduced susceptibility
    double alpha = 0.0;     // absorption coefficient [1/m]
    double n = 1.0;         // refractive index
    double slope = 0.0;     // d Re chi / d delta_p, reduced units
    double vg_ratio = 1.0;  // v_g relative to the omega_b_rf = omega_c_rf = 0 reference
    double delay = 0.0;     // pulse delay tau_d for the configured sample length [s]
};

struct SlopeEstimate {
    double value = 0.0;  // Richardson-extrapolated central difference
    double error = 0.0;  // difference of the two step estimates
};

// Central finite difference of Re chi at delta_p, Richardson-extrapolated
// from steps h and h/2.
SlopeEstimate dispersion_slope(const std::function<cplx(double)>& chi_fn,
                               double delta_p, double step);

// Width of the narrowest spectral feature for the given parameters; used to
// pick finite-difference steps that resolve it.
double local_feature_width(const AtomParams& atom, const FieldParams& fields);

// Absorption coefficient alpha = k_p * Im[chi_physical] [1/m].
double absorption_coefficient(cplx chi_reduced, const PhysicalScaling& scaling);

// Refractive index n = sqrt(1 + Re[chi_physical]).
double refractive_index(cplx chi_reduced, const PhysicalScaling& scaling);

// Converts a reduced-unit dispersion slope d Re chi_reduced / d delta_p to
// the physical derivative d Re chi / d omega_p [s].  The detuning decreases
// as the laser frequency increases, so the sign flips here and only here.
double dchi_domega_si(double slope_reduced, const PhysicalScaling& scaling);

// Group velocity c / (n + (omega_p/2n) dRe chi/d omega_p) [m/s].
double group_velocity(double n, double dchi_domega, const PhysicalScaling& scaling);

// Ratio of the group velocity to the reference with both RF fields off,
// all other parameters identical.
double group_velocity_ratio(const AtomParams& atom, const FieldParams& fields,
                            const PhysicalScaling& scaling, double delta_p,
                            Method method = Method::analytic);

// Pulse delay tau_d = L (1/v_g - 1/c) [s].
double delay_time(double vg, double sample_length);

// Full per-detuning evaluation used by sweeps.
SpectrumPoint compute_spectrum_point(const AtomParams& atom, const FieldParams& fields,
                                     const PhysicalScaling& scaling, Method method,
                                     double sample_length);

}  // namespace eit5
