#include "eit5/steady_state.hpp"

#include <cmath>
#include <stdexcept>

namespace eit5 {

CMat bb_manifold_generator(const AtomParams& atom, const DressedFrame& frame) {
    atom.validate();
    const double w = frame.omega_b_eff;
    const double k = 0.5 * atom.gamma_bb_tilde;  // jump operator strength
    // Bare-basis dephasing operator sigma_z rotated into the dressed frame:
    // L = cos(2theta) sigma_z - sin(2theta) sigma_x, an involution.
    const double c2 = std::cos(2.0 * frame.theta_b);
    const double s2 = std::sin(2.0 * frame.theta_b);

    // x = (p, q, u, v) = (rho_BB, rho_BpBp, rho_BBp, rho_BpB)
    // dp/dt = k(-s2^2 p + s2^2 q - s2 c2 (u+v)),  dq/dt = -dp/dt
    // du/dt = +i w u + k(-s2 c2 (p-q) + s2^2 v - (1+c2^2) u)
    // dv/dt = -i w v + k(-s2 c2 (p-q) + s2^2 u - (1+c2^2) v)
    CMat g(4);
    g(0, 0) = -k * s2 * s2;
    g(0, 1) = k * s2 * s2;
    g(0, 2) = -k * s2 * c2;
    g(0, 3) = -k * s2 * c2;
    for (std::size_t j = 0; j < 4; ++j) g(1, j) = -g(0, j);
    g(2, 0) = -k * s2 * c2;
    g(2, 1) = k * s2 * c2;
    g(2, 2) = cplx(-k * (1.0 + c2 * c2), w);
    g(2, 3) = k * s2 * s2;
    g(3, 0) = -k * s2 * c2;
    g(3, 1) = k * s2 * c2;
    g(3, 2) = k * s2 * s2;
    g(3, 3) = cplx(-k * (1.0 + c2 * c2), -w);
    return g;
}

static BBManifoldState bb_manifoldstate_from_vector(const cvec& x, bool relaxed) {
    BBManifoldState out;
    out.rho_BB = x[0].real();
    out.rho_BpBp = x[1].real();
    out.rho_BBp = x[2];
    out.rho_BpB = x[3];
    out.relaxed = relaxed;
    return out;
}

BBManifoldState bb_manifold_steady_state(const AtomParams& atom, const DressedFrame& frame,
                                         const BBManifoldState& initial) {
    atom.validate();
    const double trace = initial.rho_BB + initial.rho_BpBp;
    if (std::abs(trace - 1.0) > 1e-9) {
        throw std::invalid_argument("bb_manifold_steady_state: initial populations must sum to 1");
    }
    if (atom.gamma_bb_tilde == 0.0) {
        // No dissipation: nothing relaxes, the initial state is conserved.
        BBManifoldState out = initial;
        out.relaxed = false;
        return out;
    }
    const double s2 = std::sin(2.0 * frame.theta_b);
    if (s2 == 0.0) {
        // Dephasing aligned with the doublet basis: populations are frozen at
        // their initial values while the coherences decay to zero.
        BBManifoldState out = initial;
        out.rho_BBp = 0.0;
        out.rho_BpB = 0.0;
        out.relaxed = false;
        return out;
    }
    // Fixed point of the 4x4 generator under the trace constraint.  The
    // population rows are exact negatives of each other, so the first row is
    // replaced by the trace row.
    CMat g = bb_manifold_generator(atom, frame);
    CMat a(4);
    cvec b(4, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < 4; ++j) a(0, j) = (j < 2) ? 1.0 : 0.0;
    b[0] = 1.0;
    for (std::size_t i = 1; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = g(i, j);
    cvec x = solve_linear(a, b);

    // The solve must also annihilate the replaced row; otherwise the system
    // was singular beyond the expected trace degeneracy.
    cvec residual = g * x;
    if (max_abs(residual) > 1e-9) {
        throw std::runtime_error("bb_manifold_steady_state: fixed-point system did not close");
    }
    return bb_manifoldstate_from_vector(x, true);
}

void coherence_system(const AtomParams& atom, const FieldParams& fields,
                      const DressedFrame& frame, const BBManifoldState& bb,
                      int sign_b, CMat& h, cvec& s) {
    atom.validate();
    fields.validate();
    if (sign_b != 1 && sign_b != -1) {
        throw std::invalid_argument("coherence_system: sign_b must be +1 or -1");
    }
    const double g_ab = atom.gamma_ab();
    const double cb = std::cos(frame.theta_b), sb = std::sin(frame.theta_b);
    const double cc = std::cos(frame.theta_c), sc = std::sin(frame.theta_c);
    // Dephasing of the c-doublet against the b-doublet, rotated into the
    // dressed c-basis: diagonal rates plus a cross term for unequal rates.
    const double g_CB = atom.gamma_C * cc * cc + atom.gamma_Cprime * sc * sc;
    const double g_CpB = atom.gamma_C * sc * sc + atom.gamma_Cprime * cc * cc;
    const double g_cross = (atom.gamma_Cprime - atom.gamma_C) * cc * sc;

    // Energy of the addressed dressed ground state: |B> for +1, |B'> for -1.
    const double e_ket = 0.5 * fields.delta_b - sign_b * 0.5 * frame.omega_b_eff;
    const double e_a = fields.delta_p;
    const double e_C = fields.delta_p - fields.delta_mu + 0.5 * (fields.delta_c - frame.omega_c_eff);
    const double e_Cp = fields.delta_p - fields.delta_mu + 0.5 * (fields.delta_c + frame.omega_c_eff);

    h = CMat(3);
    h(0, 0) = cplx(e_a - e_ket, -g_ab);
    h(1, 1) = cplx(e_C - e_ket, -g_CB);
    h(2, 2) = cplx(e_Cp - e_ket, -g_CpB);
    h(0, 1) = h(1, 0) = -0.5 * fields.omega_mu * cc;
    h(0, 2) = h(2, 0) = 0.5 * fields.omega_mu * sc;
    h(1, 2) = h(2, 1) = cplx(0.0, -g_cross);

    s.assign(3, cplx(0.0, 0.0));
    if (sign_b == 1) {
        s[0] = -0.5 * fields.omega_p * (cb * cplx(bb.rho_BB) - sb * bb.rho_BpB);
    } else {
        s[0] = 0.5 * fields.omega_p * (sb * cplx(bb.rho_BpBp) - cb * bb.rho_BBp);
    }
}

// A coherence whose row, column, and source all vanish (e.g. rho_C'B when
// omega_c_rf = 0 and the remaining detuning and dephasing cancel exactly) is
// decoupled and stays zero; drop it so the live block still solves.
static cvec solve_with_decoupled_states(const CMat& h, const cvec& rhs) {
    const std::size_t n = h.size();
    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < n; ++j) {
        double mag = std::abs(h(j, j));
        for (std::size_t k = 0; k < n; ++k) {
            if (k != j) mag += std::abs(h(j, k)) + std::abs(h(k, j));
        }
        if (mag == 0.0) {
            if (std::abs(rhs[j]) != 0.0) {
                throw std::runtime_error(
                    "coherence steady state: driven undamped state in a lossless degenerate "
                    "configuration");
            }
        } else {
            live.push_back(j);
        }
    }
    cvec x(n, cplx(0.0, 0.0));
    if (live.size() == n) return solve_linear(h, rhs);
    if (live.empty()) return x;
    CMat hr(live.size());
    cvec rr(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
        rr[i] = rhs[live[i]];
        for (std::size_t j = 0; j < live.size(); ++j) hr(i, j) = h(live[i], live[j]);
    }
    const cvec xr = solve_linear(hr, rr);
    for (std::size_t i = 0; i < live.size(); ++i) x[live[i]] = xr[i];
    return x;
}

CoherenceSolution coherence_steady_state_general(const AtomParams& atom,
                                                 const FieldParams& fields,
                                                 const DressedFrame& frame,
                                                 const BBManifoldState& bb) {
    CoherenceSolution out;
    out.weak_probe_ok = fields.weak_probe_ok(atom.gamma_ab());

    CMat h;
    cvec s;
    for (int sign_b : {1, -1}) {
        coherence_system(atom, fields, frame, bb, sign_b, h, s);
        cvec rhs(3);
        for (std::size_t i = 0; i < 3; ++i) rhs[i] = -s[i];
        cvec x = solve_with_decoupled_states(h, rhs);
        if (sign_b == 1) {
            out.rho_aB = x[0];
            out.rho_CB = x[1];
            out.rho_CpB = x[2];
        } else {
            out.rho_aBp = x[0];
            out.rho_CBp = x[1];
            out.rho_CpBp = x[2];
        }
    }
    out.rho_ab = std::cos(frame.theta_b) * out.rho_aB - std::sin(frame.theta_b) * out.rho_aBp;
    return out;
}

CoherenceSolution coherence_steady_state_on_resonance(const AtomParams& atom,
                                                      const FieldParams& fields) {
    if (fields.delta_b != 0.0 || fields.delta_c != 0.0) {
        throw std::invalid_argument(
            "coherence_steady_state_on_resonance: requires delta_b = delta_c = 0");
    }
    const DressedFrame frame = make_dressed_frame(fields);
    return coherence_steady_state_general(atom, fields, frame, BBManifoldState{});
}

cplx chi_from_solution(const AtomParams& atom, const FieldParams& fields,
                       const CoherenceSolution& sol) {
    if (fields.omega_p == 0.0) {
        throw std::invalid_argument("chi_from_solution: omega_p must be > 0");
    }
    return atom.gamma_ab() * sol.rho_ab / fields.omega_p;
}

cplx chi_linear_solve(const AtomParams& atom, const FieldParams& fields) {
    const DressedFrame frame = make_dressed_frame(fields);
    const BBManifoldState bb = bb_manifold_steady_state(atom, frame);
    const CoherenceSolution sol = coherence_steady_state_general(atom, fields, frame, bb);
    return chi_from_solution(atom, fields, sol);
}

}  // namespace eit5
