#include "eit5/dressing.hpp"

#include <cmath>
#include <stdexcept>

namespace eit5 {

DressingResult dressing_angles(double delta, double omega) {
    if (omega < 0.0) throw std::invalid_argument("dressing_angles: omega must be >= 0");
    DressingResult out;
    out.omega_eff = std::hypot(delta, omega);
    if (out.omega_eff == 0.0) {
        // Degenerate doublet: no RF coupling and no splitting.  Return the
        // undressed basis with a flag so sweeps through zero do not abort.
        out.theta = 0.0;
        out.degenerate = true;
        return out;
    }
    // cos(theta) = sqrt((1 + delta/W)/2); positive roots keep theta in [0, pi/2].
    const double c = std::sqrt(0.5 * (1.0 + delta / out.omega_eff));
    const double s = std::sqrt(0.5 * (1.0 - delta / out.omega_eff));
    out.theta = std::atan2(s, c);
    return out;
}

DressedFrame make_dressed_frame(const FieldParams& fields) {
    fields.validate();
    const DressingResult b = dressing_angles(fields.delta_b, fields.omega_b_rf);
    const DressingResult c = dressing_angles(fields.delta_c, fields.omega_c_rf);
    DressedFrame frame;
    frame.theta_b = b.theta;
    frame.omega_b_eff = b.omega_eff;
    frame.b_degenerate = b.degenerate;
    frame.theta_c = c.theta;
    frame.omega_c_eff = c.omega_eff;
    frame.c_degenerate = c.degenerate;
    return frame;
}

CMat undressed_hamiltonian(const FieldParams& fields) {
    fields.validate();
    CMat h(5);
    // basis order: a, b, b', c, c'
    h(0, 0) = fields.delta_p;
    h(1, 1) = 0.0;
    h(2, 2) = fields.delta_b;
    h(3, 3) = fields.delta_p - fields.delta_mu;
    h(4, 4) = fields.delta_p - fields.delta_mu + fields.delta_c;
    h(0, 1) = h(1, 0) = -0.5 * fields.omega_p;
    h(0, 3) = h(3, 0) = -0.5 * fields.omega_mu;
    h(1, 2) = h(2, 1) = -0.5 * fields.omega_b_rf;
    h(3, 4) = h(4, 3) = -0.5 * fields.omega_c_rf;
    return h;
}

CMat dressing_rotation(const DressedFrame& frame) {
    CMat d = CMat::identity(5);
    const double cb = std::cos(frame.theta_b), sb = std::sin(frame.theta_b);
    const double cc = std::cos(frame.theta_c), sc = std::sin(frame.theta_c);
    d(1, 1) = cb;  d(1, 2) = sb;   // row |B>
    d(2, 1) = -sb; d(2, 2) = cb;   // row |B'>
    d(3, 3) = cc;  d(3, 4) = sc;   // row |C>
    d(4, 3) = -sc; d(4, 4) = cc;   // row |C'>
    return d;
}

CMat dressed_hamiltonian(const AtomParams& atom, const FieldParams& fields,
                         const DressedFrame& frame) {
    atom.validate();
    fields.validate();
    CMat h(5);
    const double cb = std::cos(frame.theta_b), sb = std::sin(frame.theta_b);
    const double cc = std::cos(frame.theta_c), sc = std::sin(frame.theta_c);
    // basis order: a, B, B', C, C'.  Doublet energies are delta/2 -+ W/2
    // about their bare-detuning midpoints.
    h(0, 0) = fields.delta_p;
    h(1, 1) = 0.5 * (fields.delta_b - frame.omega_b_eff);
    h(2, 2) = 0.5 * (fields.delta_b + frame.omega_b_eff);
    h(3, 3) = fields.delta_p - fields.delta_mu + 0.5 * (fields.delta_c - frame.omega_c_eff);
    h(4, 4) = fields.delta_p - fields.delta_mu + 0.5 * (fields.delta_c + frame.omega_c_eff);
    // optical couplings pick up the rotation: -cos to the lower branch,
    // +sin to the upper branch.
    h(0, 1) = h(1, 0) = -0.5 * fields.omega_p * cb;
    h(0, 2) = h(2, 0) = 0.5 * fields.omega_p * sb;
    h(0, 3) = h(3, 0) = -0.5 * fields.omega_mu * cc;
    h(0, 4) = h(4, 0) = 0.5 * fields.omega_mu * sc;
    return h;
}

}  // namespace eit5
