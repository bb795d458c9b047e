#pragma once

#include "eit5/linalg.hpp"
#include "eit5/params.hpp"

namespace eit5 {

struct DressingResult {
    double theta = 0.0;      // mixing angle [rad], in [0, pi/2]
    double omega_eff = 0.0;  // effective Rabi frequency sqrt(delta^2 + omega^2)
    bool degenerate = false; // delta = omega = 0: undressed limit returned
};

// Diagonalizes one RF-coupled ground doublet.  The dressed basis is
//   |B>  =  cos(theta)|b> + sin(theta)|b'>
//   |B'> = -sin(theta)|b> + cos(theta)|b'>
// with cos(theta) = sqrt((1 + delta/omega_eff)/2) and |B> the lower branch.
DressingResult dressing_angles(double delta, double omega);

// Builds both doublet rotations from the RF field parameters.
DressedFrame make_dressed_frame(const FieldParams& fields);

// 5x5 rotating-frame Hamiltonian in the bare basis (a, b, b', c, c'),
// detuning form: the common optical energies are eliminated so only
// detunings appear on the diagonal.  Real symmetric; units of gamma_ab,
// per hbar.
CMat undressed_hamiltonian(const FieldParams& fields);

// Block-diagonal basis change (a, b, b', c, c') -> (a, B, B', C, C').
CMat dressing_rotation(const DressedFrame& frame);

// 5x5 Hamiltonian in the partially dressed basis (a, B, B', C, C').
// Equals D * undressed * D^T by construction; the doublet blocks are
// diagonal with splittings omega_b_eff and omega_c_eff.
CMat dressed_hamiltonian(const AtomParams& atom, const FieldParams& fields,
                         const DressedFrame& frame);

}  // namespace eit5
