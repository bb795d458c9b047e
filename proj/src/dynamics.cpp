#include "eit5/dynamics.hpp"

#include "eit5/dressing.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eit5 {

cvec rk4_step(const OdeSystem& system, const cvec& x, double dt) {
    const std::size_t n = x.size();
    cvec k1 = system.derivative(x);
    cvec tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    cvec k2 = system.derivative(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    cvec k3 = system.derivative(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    cvec k4 = system.derivative(tmp);
    cvec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

IntegrationResult integrate_to_steady_state(const OdeSystem& system, cvec x0,
                                            double dt, double t_max, double tol) {
    if (dt <= 0.0 || t_max <= 0.0 || tol <= 0.0) {
        throw std::invalid_argument("integrate_to_steady_state: dt, t_max, tol must be > 0");
    }
    const double blowup = 1e12 * std::max(1.0, max_abs(x0));
    IntegrationResult out;
    out.state = std::move(x0);
    while (out.t_reached < t_max) {
        const cvec residual = system.derivative(out.state);
        if (max_abs(residual) < tol * max_abs(out.state) + tol) {
            out.converged = true;
            return out;
        }
        out.state = rk4_step(system, out.state, dt);
        out.t_reached += dt;
        ++out.steps;
        if (max_abs(out.state) > blowup) {
            std::ostringstream msg;
            msg << "integrate_to_steady_state: norm blow-up at t = " << out.t_reached
                << " (|x| > " << blowup << "); step size dt = " << dt
                << " does not resolve the fastest mode";
            throw std::runtime_error(msg.str());
        }
    }
    const cvec residual = system.derivative(out.state);
    out.converged = max_abs(residual) < tol * max_abs(out.state) + tol;
    return out;
}

DoublingResult steady_state_by_doubling(const OdeSystem& system, double dt,
                                        std::size_t max_doublings, double rtol) {
    if (dt <= 0.0 || rtol <= 0.0) {
        throw std::invalid_argument("steady_state_by_doubling: dt and rtol must be > 0");
    }
    const std::size_t n = system.source.size();
    // One RK4 step of dx/dt = Gx + s is the affine map x -> P x + c with
    //   Q = I + hG/2 + (hG)^2/6 + (hG)^3/24,  P = I + hG Q,  c = h Q s.
    const CMat i = CMat::identity(n);
    const CMat hg = cplx(dt, 0.0) * system.generator;
    const CMat hg2 = hg * hg;
    const CMat q = i + cplx(0.5, 0.0) * hg + cplx(1.0 / 6.0, 0.0) * hg2
                 + cplx(1.0 / 24.0, 0.0) * (hg2 * hg);
    CMat p = i + hg * q;
    cvec c = q * system.source;
    for (std::size_t k = 0; k < n; ++k) c[k] *= dt;

    DoublingResult out;
    out.state = c;
    cvec prev = c;
    for (std::size_t k = 1; k <= max_doublings; ++k) {
        cvec pc = p * c;
        for (std::size_t j = 0; j < n; ++j) c[j] = pc[j] + c[j];
        p = p * p;
        out.state = c;
        out.doublings = k;
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(c[j] - prev[j]));
        if (diff <= rtol * std::max(1.0, max_abs(c))) {
            out.converged = true;
            return out;
        }
        prev = c;
    }
    return out;
}

OdeSystem coherence_ode_system(const AtomParams& atom, const FieldParams& fields,
                               const DressedFrame& frame, const BBManifoldState& bb,
                               int sign_b) {
    CMat h;
    cvec s;
    coherence_system(atom, fields, frame, bb, sign_b, h, s);
    // i dX/dt = H X + S  ->  dX/dt = -i H X - i S
    OdeSystem out;
    out.generator = cplx(0.0, -1.0) * h;
    out.source.resize(3);
    for (std::size_t k = 0; k < 3; ++k) out.source[k] = cplx(0.0, -1.0) * s[k];
    return out;
}

OdeSystem bb_ode_system(const AtomParams& atom, const DressedFrame& frame) {
    OdeSystem out;
    out.generator = bb_manifold_generator(atom, frame);
    out.source.assign(4, cplx(0.0, 0.0));
    return out;
}

cplx chi_time_domain(const AtomParams& atom, const FieldParams& fields) {
    const DressedFrame frame = make_dressed_frame(fields);
    const BBManifoldState bb = bb_manifold_steady_state(atom, frame);
    // Step size resolving the fastest coherent and dissipative scales.
    const double scale = std::abs(fields.delta_p) + std::abs(fields.delta_mu)
                       + fields.omega_mu + frame.omega_b_eff + frame.omega_c_eff
                       + atom.gamma_ab();
    const double dt = 0.05 / std::max(1.0, scale);
    cplx rho_aB(0.0, 0.0), rho_aBp(0.0, 0.0);
    for (int sign_b : {1, -1}) {
        const OdeSystem system = coherence_ode_system(atom, fields, frame, bb, sign_b);
        const DoublingResult r = steady_state_by_doubling(system, dt, 60, 1e-14);
        if (!r.converged) {
            throw std::runtime_error("chi_time_domain: time-domain limit did not converge");
        }
        (sign_b == 1 ? rho_aB : rho_aBp) = r.state[0];
    }
    const cplx rho_ab = std::cos(frame.theta_b) * rho_aB - std::sin(frame.theta_b) * rho_aBp;
    if (fields.omega_p == 0.0) {
        throw std::invalid_argument("chi_time_domain: omega_p must be > 0");
    }
    return atom.gamma_ab() * rho_ab / fields.omega_p;
}

DecayExponents decay_exponents_bb(const AtomParams& atom, double omega_b_rf) {
    atom.validate();
    if (omega_b_rf < 0.0) {
        throw std::invalid_argument("decay_exponents_bb: omega_b_rf must be >= 0");
    }
    const double g = atom.gamma_bb_tilde;
    const double disc = 4.0 * omega_b_rf * omega_b_rf - g * g;
    DecayExponents out;
    out.b = 0.5 * g;
    if (disc >= 0.0) {
        out.a = 0.5 * std::sqrt(disc);
    } else {
        out.a = 0.5 * std::sqrt(-disc);
        out.overdamped = true;
    }
    return out;
}

cvec vec_density(const CMat& rho) {
    const std::size_t n = rho.size();
    cvec out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = rho(i, j);
    return out;
}

CMat unvec_density(const cvec& x) {
    std::size_t n = 0;
    while (n * n < x.size()) ++n;
    if (n * n != x.size()) throw std::invalid_argument("unvec_density: length is not a square");
    CMat out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = x[i * n + j];
    return out;
}

// Adds the superoperator of rho -> A rho B to m (row-major vectorization):
// m[(i,j),(k,l)] += A(i,k) * B(l,j).
static void add_sandwich(CMat& m, const CMat& a, const CMat& b, cplx weight) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    m(i * n + j, k * n + l) += weight * a(i, k) * b(l, j);
}

static CMat dagger(const CMat& a) {
    const std::size_t n = a.size();
    CMat out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
    return out;
}

OdeSystem five_level_lindblad(const AtomParams& atom, const FieldParams& fields) {
    atom.validate();
    fields.validate();
    const CMat h = undressed_hamiltonian(fields);
    const CMat id = CMat::identity(5);
    CMat super(25);
    // coherent part: -i (H rho - rho H)
    add_sandwich(super, h, id, cplx(0.0, -1.0));
    add_sandwich(super, id, h, cplx(0.0, 1.0));

    std::vector<CMat> jumps;
    // spontaneous emission |a> -> |b>, |b'>, |c> with equal branching
    const double branch = std::sqrt(atom.gamma_a / 3.0);
    for (std::size_t target : {1u, 2u, 3u}) {
        CMat l(5);
        l(target, 0) = branch;
        jumps.push_back(l);
    }
    // pure dephasings as diagonal jumps: |a> against the ground manifold,
    // |c> and |c'> against the b-doublet
    const double deph[5] = {atom.gamma_ab_tilde, 0.0, 0.0, atom.gamma_C, atom.gamma_Cprime};
    for (std::size_t lev = 0; lev < 5; ++lev) {
        if (deph[lev] <= 0.0) continue;
        CMat l(5);
        l(lev, lev) = std::sqrt(2.0 * deph[lev]);
        jumps.push_back(l);
    }
    // intra-b-doublet dephasing
    if (atom.gamma_bb_tilde > 0.0) {
        CMat l(5);
        l(1, 1) = std::sqrt(0.5 * atom.gamma_bb_tilde);
        l(2, 2) = -std::sqrt(0.5 * atom.gamma_bb_tilde);
        jumps.push_back(l);
    }
    for (const CMat& l : jumps) {
        const CMat ld = dagger(l);
        const CMat ldl = ld * l;
        add_sandwich(super, l, ld, cplx(1.0, 0.0));
        add_sandwich(super, ldl, id, cplx(-0.5, 0.0));
        add_sandwich(super, id, ldl, cplx(-0.5, 0.0));
    }

    OdeSystem out;
    out.generator = std::move(super);
    out.source.assign(25, cplx(0.0, 0.0));
    return out;
}

}  // namespace eit5
