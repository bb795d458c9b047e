#pragma once

#include "eit5/linalg.hpp"
#include "eit5/params.hpp"

#include <array>

namespace eit5 {

struct NarrowResonance {
    double center = 0.0;  // probe-detuning position [gamma_ab]
    double fwhm = 0.0;    // Gamma_n [gamma_ab]
    double height = 0.0;  // peak Im chi (reduced units)
};

struct NarrowResonancePair {
    NarrowResonance minus;  // center at -omega_b_eff/2
    NarrowResonance plus;   // center at +omega_b_eff/2
    bool validity_ok = true;  // regime flag: omega_mu, gamma_ab >> omega_b, omega_c, dephasings
};

struct DressedExcitedTriplet {
    double theta = 0.0;  // excited-manifold mixing angle, tan(theta) = -omega_mu/omega_c_rf
    double e_plus = 0.0;
    double e_minus = 0.0;
    double e_zero = 0.0;
    std::array<double, 6> transition_detunings{};  // sorted ascending
};

struct ChiTerms {
    cplx t_plus{0.0, 0.0};   // resolvent term addressing the lower dressed ground state
    cplx t_minus{0.0, 0.0};  // resolvent term addressing the upper dressed ground state
};

struct ZeroDetuningResult {
    double im_chi = 0.0;           // closed-form Im chi at delta_p = 0
    double slope = 0.0;            // closed-form d Re chi / d delta_p at delta_p = 0
    double im_chi_symmetric = 0.0; // approximation for omega_b = omega_c, gamma_C = gamma_Cprime
    double slope_symmetric = 0.0;
    bool validity_ok = true;       // omega_b, omega_c, dephasings well below omega_mu, gamma_ab
};

// The two bracketed resolvent terms of the closed-form susceptibility,
// derived for resonant RF fields (delta_b = delta_c = 0).  Each term is the
// ratio N/D of the c-doublet subdeterminant to the full 3x3 determinant of
// one coherence column.
ChiTerms chi_closed_form_terms(const AtomParams& atom, const FieldParams& fields);

// Closed-form reduced susceptibility gamma_ab * rho_ab / omega_p.  The
// prefactor gamma_ab/8 carries the equally split ground-doublet population
// (1/2) and the two dressed-basis projection factors (1/2 each on source and
// reconstruction); this matches the steady-state linear solve identically.
cplx chi_reduced(const AtomParams& atom, const FieldParams& fields);

// Same two-term spectral shape scaled by gamma_ab/2, i.e. as if the probed
// channel carried the full population with unit projections.  Conventional
// single-ground-state treatments use this normalization; provided so both
// conventions can be compared explicitly.
cplx chi_reduced_full_population(const AtomParams& atom, const FieldParams& fields);

// Three-level Lambda-system susceptibility in the full-population
// normalization: (gamma_ab/2)(delta_p - i gamma_cb) /
// ((delta_p - i gamma_ab)(delta_p - i gamma_cb) - (omega_mu/2)^2).
cplx chi_standard_eit(const AtomParams& atom, double omega_mu, double delta_p,
                      double gamma_cb);

// Lorentzian parameters of the two narrow dark resonances at
// +- omega_b_eff/2: width Gamma_n = 2 gamma_ab (omega_c^2/omega_mu^2 +
// gamma_Cprime/gamma_ab), height omega_c^2 omega_mu /
// (2 (gamma_ab omega_c^2 + omega_mu^2 gamma_Cprime)).
NarrowResonancePair narrow_resonances(const AtomParams& atom, const FieldParams& fields);

// Eigenstructure of the control-dressed excited manifold {a, c, c'} and the
// six probe detunings at which transitions from {B, B'} are resonant.
DressedExcitedTriplet dressed_excited_triplet(double omega_mu, double omega_c_rf,
                                              double omega_b_eff);

// Leading-order absorption and dispersion at delta_p = 0, both the full
// rational closed forms and the symmetric-case approximations.
ZeroDetuningResult chi_at_zero_detuning(const AtomParams& atom, const FieldParams& fields);

}  // namespace eit5
