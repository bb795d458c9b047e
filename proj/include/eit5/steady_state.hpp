#pragma once

#include "eit5/dressing.hpp"
#include "eit5/linalg.hpp"
#include "eit5/params.hpp"

namespace eit5 {

struct BBManifoldState {
    double rho_BB = 0.5;    // population of the lower dressed state |B>
    double rho_BpBp = 0.5;  // population of the upper dressed state |B'>
    cplx rho_BBp{0.0, 0.0};
    cplx rho_BpB{0.0, 0.0};
    bool relaxed = true;    // false when no relaxation pathway exists and the
                            // initial state was returned unchanged
};

struct CoherenceSolution {
    cplx rho_aB{0.0, 0.0};
    cplx rho_CB{0.0, 0.0};
    cplx rho_CpB{0.0, 0.0};
    cplx rho_aBp{0.0, 0.0};
    cplx rho_CBp{0.0, 0.0};
    cplx rho_CpBp{0.0, 0.0};
    cplx rho_ab{0.0, 0.0};  // cos(theta_b)*rho_aB - sin(theta_b)*rho_aBp
    bool weak_probe_ok = true;
};

// 4x4 linear generator of the isolated b-doublet dynamics in the dressed
// basis, acting on x = (rho_BB, rho_BpBp, rho_BBp, rho_BpB).  Coherent part
// from the doublet splitting; dissipative part from pure dephasing between
// the bare states |b>, |b'> rotated into the dressed frame.
CMat bb_manifold_generator(const AtomParams& atom, const DressedFrame& frame);

// Long-time state of the b-doublet.  With dephasing and a mixing angle away
// from 0 or pi/2 the fixed point is (1/2, 1/2, 0, 0) independent of the
// initial state; otherwise populations cannot relax and the initial ones are
// kept (coherences still decay when dephasing is present).
BBManifoldState bb_manifold_steady_state(const AtomParams& atom, const DressedFrame& frame,
                                         const BBManifoldState& initial = BBManifoldState{});

// Assembles one of the two decoupled 3x3 coherence systems,
//   i dX/dt = H X + S,   X = (rho_a., rho_C., rho_C'.)
// where the column index "." is |B> for sign_b = +1 and |B'> for sign_b = -1.
// The b-doublet state enters only through the source vector.
void coherence_system(const AtomParams& atom, const FieldParams& fields,
                      const DressedFrame& frame, const BBManifoldState& bb,
                      int sign_b, CMat& h, cvec& s);

// Steady state of both coherence columns by direct linear solve, X = -H^{-1}S,
// valid for arbitrary RF detunings.
CoherenceSolution coherence_steady_state_general(const AtomParams& atom,
                                                 const FieldParams& fields,
                                                 const DressedFrame& frame,
                                                 const BBManifoldState& bb);

// Convenience path for resonant RF fields (delta_b = delta_c = 0) with the
// relaxed b-doublet source (1/2, 1/2, 0, 0).
CoherenceSolution coherence_steady_state_on_resonance(const AtomParams& atom,
                                                      const FieldParams& fields);

// Reduced susceptibility gamma_ab * rho_ab / omega_p for a solved coherence.
cplx chi_from_solution(const AtomParams& atom, const FieldParams& fields,
                       const CoherenceSolution& sol);

// Full numeric pipeline: dressing, b-doublet relaxation, linear solve, chi.
cplx chi_linear_solve(const AtomParams& atom, const FieldParams& fields);

}  // namespace eit5
