#include "doctest.h"

#include "eit5/dynamics.hpp"
#include "eit5/steady_state.hpp"

#include <cmath>
#include <complex>

#ifdef EIT5_HAVE_EIGEN
#include <Eigen/Eigenvalues>
#endif

using namespace eit5;

namespace {

OdeSystem scalar_decay() {
    OdeSystem sys;
    sys.generator = CMat(1);
    sys.generator(0, 0) = cplx(-1.0, 0.0);
    sys.source.assign(1, cplx(0.0, 0.0));
    return sys;
}

double rk4_decay_error(double dt) {
    const OdeSystem sys = scalar_decay();
    cvec x{cplx(1.0, 0.0)};
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int i = 0; i < steps; ++i) {
        x = rk4_step(sys, x, dt);
    }
    return std::abs(x[0] - std::exp(-1.0));
}

FieldParams four_peak_fields(double delta_p) {
    FieldParams f;
    f.omega_mu = 2.0;
    f.omega_b_rf = 0.1;
    f.omega_c_rf = 0.1;
    f.delta_p = delta_p;
    return f;
}

}  // namespace

TEST_CASE("RK4 integrates an exponential decay accurately") {
    CHECK(rk4_decay_error(0.01) < 1e-9);
}

TEST_CASE("RK4 error shrinks at fourth order") {
    const double ratio = rk4_decay_error(0.1) / rk4_decay_error(0.05);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("time-domain and linear-solve susceptibilities agree") {
    AtomParams atom;
    atom.gamma_C = 1e-3;
    atom.gamma_Cprime = 2e-3;
    for (double dp : {0.0, 0.05, -0.7, 1.1}) {
        FieldParams fields = four_peak_fields(dp);
        const cplx td = chi_time_domain(atom, fields);
        const cplx ls = chi_linear_solve(atom, fields);
        CHECK(std::abs(td - ls) <= 1e-9 * std::max(1.0, std::abs(ls)));
    }
}

TEST_CASE("propagator doubling reaches the same fixed point as the direct solve") {
    AtomParams atom;
    atom.gamma_C = 5e-4;
    const FieldParams fields = four_peak_fields(0.3);
    const DressedFrame frame = make_dressed_frame(fields);
    const BBManifoldState bb = bb_manifold_steady_state(atom, frame);
    for (int sign : {+1, -1}) {
        const OdeSystem sys = coherence_ode_system(atom, fields, frame, bb, sign);
        const DoublingResult dr = steady_state_by_doubling(sys, 0.02, 60, 1e-13);
        CHECK(dr.converged);

        const CoherenceSolution direct = coherence_steady_state_general(atom, fields, frame, bb);
        const cvec x = sign > 0 ? cvec{direct.rho_aB, direct.rho_CB, direct.rho_CpB}
                                : cvec{direct.rho_aBp, direct.rho_CBp, direct.rho_CpBp};
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(dr.state[i] - x[i]) <= 1e-10 * std::max(1.0, std::abs(x[i])));
        }
    }
}

TEST_CASE("runaway integration is reported instead of returning garbage") {
    OdeSystem sys;
    sys.generator = CMat(1);
    sys.generator(0, 0) = cplx(100.0, 0.0);
    sys.source.assign(1, cplx(0.0, 0.0));
    const cvec x0{cplx(1.0, 0.0)};
    CHECK_THROWS_AS(integrate_to_steady_state(sys, x0, 1.0, 50.0, 1e-12), std::runtime_error);
}

TEST_CASE("coherent exchange rates in the lower doublet") {
    AtomParams atom;
    atom.gamma_bb_tilde = 1.0;
    // 4 Ob^2 > gamma^2: underdamped, oscillation sqrt(3)/2 on top of decay 1/2.
    DecayExponents d = decay_exponents_bb(atom, 1.0);
    CHECK_FALSE(d.overdamped);
    CHECK(d.a == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(d.b == doctest::Approx(0.5));

    atom.gamma_bb_tilde = 0.5;
    d = decay_exponents_bb(atom, 0.1);
    CHECK(d.overdamped);
    CHECK(d.a == doctest::Approx(std::sqrt(0.25 - 0.04) / 2.0));
    CHECK(d.b == doctest::Approx(0.25));
}

#ifdef EIT5_HAVE_EIGEN
TEST_CASE("doublet generator spectrum at equal mixing") {
    AtomParams atom;
    atom.gamma_bb_tilde = 0.3;
    FieldParams fields;
    fields.omega_b_rf = 1.0;  // delta_b = 0 puts the mixing angle at pi/4
    const DressedFrame frame = make_dressed_frame(fields);
    const CMat g = bb_manifold_generator(atom, frame);

    Eigen::MatrixXcd m(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m(r, c) = g(r, c);
        }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    std::vector<cplx> eig(4);
    for (int i = 0; i < 4; ++i) {
        eig[i] = es.eigenvalues()(i);
    }
    const double osc = std::sqrt(4.0 * 1.0 - 0.09) / 2.0;
    const cplx expected[] = {cplx(0.0, 0.0), cplx(-0.3, 0.0), cplx(-0.15, osc), cplx(-0.15, -osc)};
    for (const cplx& want : expected) {
        double best = 1e300;
        for (const cplx& got : eig) {
            best = std::min(best, std::abs(got - want));
        }
        CHECK(best < 1e-12);
    }
}
#endif

TEST_CASE("full master equation preserves trace and hermiticity") {
    AtomParams atom;
    atom.gamma_C = 1e-3;
    atom.gamma_Cprime = 1e-3;
    atom.gamma_bb_tilde = 1e-3;
    const FieldParams fields = four_peak_fields(0.2);
    const OdeSystem sys = five_level_lindblad(atom, fields);
    REQUIRE(sys.generator.size() == 25);

    // Start from a mixed state with coherences and integrate a short stretch.
    CMat rho(5);
    rho(1, 1) = 0.4;
    rho(2, 2) = 0.3;
    rho(3, 3) = 0.2;
    rho(4, 4) = 0.1;
    rho(1, 3) = cplx(0.05, 0.02);
    rho(3, 1) = std::conj(rho(1, 3));
    cvec x = vec_density(rho);
    for (int i = 0; i < 400; ++i) {
        x = rk4_step(sys, x, 0.05);
    }
    const CMat out = unvec_density(x);
    cplx tr(0.0, 0.0);
    for (std::size_t i = 0; i < 5; ++i) {
        tr += out(i, i);
    }
    CHECK(std::abs(tr - cplx(1.0, 0.0)) < 1e-10);
    for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t c = 0; c < 5; ++c) {
            CHECK(std::abs(out(r, c) - std::conj(out(c, r))) < 1e-10);
        }
    }
#ifdef EIT5_HAVE_EIGEN
    Eigen::MatrixXcd m(5, 5);
    for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t c = 0; c < 5; ++c) {
            m(r, c) = out(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    for (int i = 0; i < 5; ++i) {
        CHECK(es.eigenvalues()(i) >= -1e-10);
    }
#endif
}

TEST_CASE("excited population scales with the probe intensity") {
    AtomParams atom;
    atom.gamma_C = 1e-3;
    atom.gamma_Cprime = 1e-3;
    atom.gamma_bb_tilde = 1e-3;
    atom.gamma_ab_tilde = 1e-3;

    auto rho_aa = [&](double omega_p) {
        FieldParams fields = four_peak_fields(0.3);
        fields.omega_p = omega_p;
        const OdeSystem sys = five_level_lindblad(atom, fields);
        // Steady state of the open system: replace one row of g x = 0 with
        // the trace constraint to pin the normalization.
        const std::size_t n = 25;
        CMat g = sys.generator;
        cvec rhs(n, cplx(0.0, 0.0));
        for (std::size_t c = 0; c < n; ++c) {
            g(0, c) = cplx(0.0, 0.0);
        }
        for (int i = 0; i < 5; ++i) {
            g(0, static_cast<std::size_t>(i) * 5 + i) = cplx(1.0, 0.0);
        }
        rhs[0] = cplx(1.0, 0.0);
        const cvec x = solve_linear(g, rhs);
        return x[0].real();  // rho_aa sits in the first vectorized slot
    };

    const double lo = rho_aa(1e-3);
    const double hi = rho_aa(2e-3);
    CHECK(hi / lo == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("master-equation steady state is independent of the starting point") {
    AtomParams atom;
    atom.gamma_C = 1e-3;
    atom.gamma_Cprime = 1e-3;
    atom.gamma_bb_tilde = 1e-3;
    atom.gamma_ab_tilde = 1e-3;
    const FieldParams fields = four_peak_fields(0.3);
    const OdeSystem sys = five_level_lindblad(atom, fields);

    CMat rho_b(5);
    rho_b(1, 1) = 1.0;
    CMat rho_c(5);
    rho_c(3, 3) = 0.5;
    rho_c(4, 4) = 0.5;

    const IntegrationResult ra =
        integrate_to_steady_state(sys, vec_density(rho_b), 0.05, 2e5, 1e-12);
    const IntegrationResult rb =
        integrate_to_steady_state(sys, vec_density(rho_c), 0.05, 2e5, 1e-12);
    REQUIRE(ra.converged);
    REQUIRE(rb.converged);
    for (std::size_t i = 0; i < 25; ++i) {
        CHECK(std::abs(ra.state[i] - rb.state[i]) < 1e-8);
    }
}
