#include "doctest.h"

#include "eit5/dressing.hpp"
#include "eit5/dynamics.hpp"
#include "eit5/steady_state.hpp"

#include <cmath>

using namespace eit5;

namespace {

FieldParams four_peak_fields(double delta_p) {
    FieldParams f;
    f.omega_mu = 2.0;
    f.omega_b_rf = 0.1;
    f.omega_c_rf = 0.1;
    f.delta_p = delta_p;
    return f;
}

}  // namespace

TEST_CASE("dephasing equalizes the dressed doublet populations") {
    AtomParams atom;
    atom.gamma_bb_tilde = 0.02;
    FieldParams fields;
    fields.omega_b_rf = 1.0;
    const DressedFrame frame = make_dressed_frame(fields);

    BBManifoldState initial;
    initial.rho_BB = 0.9;
    initial.rho_BpBp = 0.1;
    initial.rho_BBp = cplx(0.05, -0.02);
    initial.rho_BpB = std::conj(initial.rho_BBp);
    const BBManifoldState ss = bb_manifold_steady_state(atom, frame, initial);
    CHECK(ss.relaxed);
    CHECK(ss.rho_BB == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(ss.rho_BpBp == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(ss.rho_BBp) < 1e-13);
    CHECK(std::abs(ss.rho_BpB) < 1e-13);
}

TEST_CASE("the equalized fixed point holds away from the symmetric mixing angle") {
    AtomParams atom;
    atom.gamma_bb_tilde = 0.01;
    FieldParams fields;
    // delta = -1, omega = sqrt(3): mixing angle pi/3, splitting 2.
    fields.delta_b = -1.0;
    fields.omega_b_rf = std::sqrt(3.0);
    const DressedFrame frame = make_dressed_frame(fields);
    CHECK(frame.theta_b == doctest::Approx(std::acos(0.5)).epsilon(1e-13));

    const BBManifoldState ss = bb_manifold_steady_state(atom, frame);
    CHECK(ss.rho_BB == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(ss.rho_BBp) < 1e-12);

    // The time-domain route from a lopsided start agrees.
    OdeSystem system = bb_ode_system(atom, frame);
    cvec x0{cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)};
    const IntegrationResult r = integrate_to_steady_state(system, x0, 0.2, 2e4, 1e-11);
    CHECK(r.converged);
    CHECK(std::abs(r.state[0] - cplx(0.5, 0.0)) < 1e-8);
    CHECK(std::abs(r.state[1] - cplx(0.5, 0.0)) < 1e-8);
    CHECK(std::abs(r.state[2]) < 1e-8);
}

TEST_CASE("steady state satisfies the generator equation") {
    AtomParams atom;
    atom.gamma_bb_tilde = 0.05;
    FieldParams fields;
    fields.delta_b = 0.4;
    fields.omega_b_rf = 0.8;
    const DressedFrame frame = make_dressed_frame(fields);
    const BBManifoldState ss = bb_manifold_steady_state(atom, frame);
    const CMat g = bb_manifold_generator(atom, frame);
    const cvec x{cplx(ss.rho_BB, 0.0), cplx(ss.rho_BpBp, 0.0), ss.rho_BBp, ss.rho_BpB};
    CHECK(max_abs(g * x) < 1e-12);
}

TEST_CASE("without dephasing the doublet state is frozen and flagged") {
    const AtomParams atom;  // gamma_bb_tilde = 0
    FieldParams fields;
    fields.omega_b_rf = 1.0;
    const DressedFrame frame = make_dressed_frame(fields);
    BBManifoldState initial;
    initial.rho_BB = 0.7;
    initial.rho_BpBp = 0.3;
    const BBManifoldState ss = bb_manifold_steady_state(atom, frame, initial);
    CHECK_FALSE(ss.relaxed);
    CHECK(ss.rho_BB == 0.7);
    CHECK(ss.rho_BpBp == 0.3);
}

TEST_CASE("at an unmixed angle the populations cannot relax") {
    AtomParams atom;
    atom.gamma_bb_tilde = 0.1;
    FieldParams fields;
    fields.delta_b = 2.0;  // omega_b_rf = 0: theta = 0, dephasing is diagonal
    const DressedFrame frame = make_dressed_frame(fields);
    BBManifoldState initial;
    initial.rho_BB = 0.8;
    initial.rho_BpBp = 0.2;
    initial.rho_BBp = cplx(0.1, 0.0);
    initial.rho_BpB = cplx(0.1, 0.0);
    const BBManifoldState ss = bb_manifold_steady_state(atom, frame, initial);
    CHECK_FALSE(ss.relaxed);
    CHECK(ss.rho_BB == 0.8);
    CHECK(std::abs(ss.rho_BBp) == 0.0);
}

TEST_CASE("coherences are exactly linear in the probe strength") {
    const AtomParams atom;
    FieldParams f1 = four_peak_fields(0.3);
    FieldParams f2 = f1;
    f2.omega_p = 2.0 * f1.omega_p;
    const DressedFrame frame = make_dressed_frame(f1);
    const BBManifoldState bb = bb_manifold_steady_state(atom, frame);
    const CoherenceSolution s1 = coherence_steady_state_general(atom, f1, frame, bb);
    const CoherenceSolution s2 = coherence_steady_state_general(atom, f2, frame, bb);
    CHECK(std::abs(s2.rho_aB - 2.0 * s1.rho_aB) <= 1e-15 * std::abs(s1.rho_aB));
    CHECK(std::abs(s2.rho_ab - 2.0 * s1.rho_ab) <= 1e-15 * std::abs(s1.rho_ab));
    CHECK(std::abs(s2.rho_CpBp - 2.0 * s1.rho_CpBp) <= 1e-14 * std::abs(s1.rho_CpBp));
    // chi is the probe-normalized coherence, so it is probe-independent.
    CHECK(std::abs(chi_from_solution(atom, f2, s2) - chi_from_solution(atom, f1, s1)) < 1e-15);
}

TEST_CASE("an unprobed atom has no optical coherence") {
    const AtomParams atom;
    FieldParams fields = four_peak_fields(0.5);
    fields.omega_p = 0.0;
    const DressedFrame frame = make_dressed_frame(fields);
    const CoherenceSolution sol =
        coherence_steady_state_general(atom, fields, frame, bb_manifold_steady_state(atom, frame));
    CHECK(std::abs(sol.rho_aB) == 0.0);
    CHECK(std::abs(sol.rho_ab) == 0.0);
    CHECK_THROWS_AS(chi_from_solution(atom, fields, sol), std::invalid_argument);
}

TEST_CASE("the resonant-RF convenience path matches the general solve") {
    const AtomParams atom;
    const FieldParams fields = four_peak_fields(0.7);
    const DressedFrame frame = make_dressed_frame(fields);
    const CoherenceSolution general =
        coherence_steady_state_general(atom, fields, frame, BBManifoldState{});
    const CoherenceSolution resonant = coherence_steady_state_on_resonance(atom, fields);
    CHECK(std::abs(general.rho_ab - resonant.rho_ab) < 1e-15);
    CHECK(std::abs(general.rho_CpB - resonant.rho_CpB) < 1e-15);

    FieldParams detuned = fields;
    detuned.delta_b = 0.2;
    CHECK_THROWS_AS(coherence_steady_state_on_resonance(atom, detuned), std::invalid_argument);
}

TEST_CASE("with all couplings off the probe sees a two-level line") {
    const AtomParams atom;
    FieldParams fields;
    fields.omega_mu = 0.0;
    const double g = atom.gamma_ab();
    for (double dp : {0.0, 0.3, -1.7}) {
        fields.delta_p = dp;
        const cplx expected = 0.25 * g / cplx(dp, -g);
        CHECK(std::abs(chi_linear_solve(atom, fields) - expected) < 1e-14);
    }
    // On resonance: i/4, a quarter rather than a half because the probed bare
    // state carries half the population.
    fields.delta_p = 0.0;
    CHECK(std::abs(chi_linear_solve(atom, fields) - cplx(0.0, 0.25)) < 1e-15);
}

TEST_CASE("spectrum is symmetric under probe-detuning reflection at zero control detuning") {
    const AtomParams atom;
    for (double dp : {0.03, 0.05, 0.4, 1.0, 2.5}) {
        const cplx plus = chi_linear_solve(atom, four_peak_fields(dp));
        const cplx minus = chi_linear_solve(atom, four_peak_fields(-dp));
        CHECK(std::abs(minus - cplx(-plus.real(), plus.imag())) < 1e-13);
    }
}

TEST_CASE("solved coherences satisfy the assembled linear system") {
    AtomParams atom;
    atom.gamma_C = 1e-3;
    atom.gamma_Cprime = 2e-3;
    const FieldParams fields = four_peak_fields(0.3);
    const DressedFrame frame = make_dressed_frame(fields);
    const BBManifoldState bb = bb_manifold_steady_state(atom, frame);
    const CoherenceSolution sol = coherence_steady_state_general(atom, fields, frame, bb);

    CMat h;
    cvec s;
    coherence_system(atom, fields, frame, bb, 1, h, s);
    const cvec x{sol.rho_aB, sol.rho_CB, sol.rho_CpB};
    cvec residual = h * x;
    for (std::size_t i = 0; i < 3; ++i) residual[i] += s[i];
    CHECK(max_abs(residual) < 1e-15);
}
