#pragma once

#include "eit5/linalg.hpp"
#include "eit5/params.hpp"
#include "eit5/steady_state.hpp"

namespace eit5 {

// Linear-affine dynamical system dx/dt = generator * x + source.
struct OdeSystem {
    CMat generator;
    cvec source;

    cvec derivative(const cvec& x) const {
        cvec out = generator * x;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += source[i];
        return out;
    }
};

struct IntegrationResult {
    cvec state;
    bool converged = false;
    double t_reached = 0.0;
    std::size_t steps = 0;
};

struct DoublingResult {
    cvec state;
    bool converged = false;
    std::size_t doublings = 0;
};

struct DecayExponents {
    double a = 0.0;          // oscillation rate of the b-doublet coherences
    double b = 0.0;          // decay rate (half the dephasing rate)
    bool overdamped = false; // dephasing exceeds 2*omega_b: a is the real
                             // splitting magnitude of the two decay rates
};

// One classical fourth-order Runge-Kutta step.
cvec rk4_step(const OdeSystem& system, const cvec& x, double dt);

// Fixed-step RK4 until the residual ||generator*x + source|| drops below
// tol*||x|| + tol, or t_max is reached.  The residual criterion is used
// instead of state differences so slowly decaying modes cannot fake
// convergence.  Norm blow-up beyond 1e12 * max(1, ||x0||) aborts with a
// diagnostic, indicating an unstable step size.
IntegrationResult integrate_to_steady_state(const OdeSystem& system, cvec x0,
                                            double dt, double t_max, double tol);

// Long-time limit by propagator squaring: the RK4 map x -> P x + c is
// repeatedly composed with itself, so k doublings equal 2^k RK4 steps at
// logarithmic cost.  Because the RK4 fixed point of a linear-affine system
// is exactly the true steady state -generator^{-1} source, this agrees with
// the direct linear solve to near machine precision.
DoublingResult steady_state_by_doubling(const OdeSystem& system, double dt,
                                        std::size_t max_doublings, double rtol);

// ODE view of one 3x3 coherence column (sign_b = +1 for |B>, -1 for |B'>).
OdeSystem coherence_ode_system(const AtomParams& atom, const FieldParams& fields,
                               const DressedFrame& frame, const BBManifoldState& bb,
                               int sign_b);

// ODE view of the isolated b-doublet dynamics.
OdeSystem bb_ode_system(const AtomParams& atom, const DressedFrame& frame);

// Reduced susceptibility via time-domain integration of both coherence
// columns; the independent oracle for the linear-solve and closed-form paths.
cplx chi_time_domain(const AtomParams& atom, const FieldParams& fields);

// Printed decay exponents of the b-doublet coherences at theta_b = pi/4:
// a = sqrt(4 omega_b^2 - gamma_bb'^2)/2, b = gamma_bb'/2.
DecayExponents decay_exponents_bb(const AtomParams& atom, double omega_b_rf);

// Full five-level Lindblad generator in the bare basis (a, b, b', c, c'),
// acting on the row-major vectorization of the density matrix.  Spontaneous
// emission branches from |a> at gamma_a/3 to each of |b>, |b'>, |c>; pure
// dephasings are diagonal jump operators plus the intra-b-doublet exchange
// term.
OdeSystem five_level_lindblad(const AtomParams& atom, const FieldParams& fields);

// Row-major vectorization helpers for density matrices.
cvec vec_density(const CMat& rho);
CMat unvec_density(const cvec& x);

}  // namespace eit5
