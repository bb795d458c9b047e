#include "eit5/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eit5 {

static void require_resonant_rf(const FieldParams& fields, const char* who) {
    if (fields.delta_b != 0.0 || fields.delta_c != 0.0) {
        throw std::invalid_argument(std::string(who) + ": closed form requires delta_b = delta_c = 0");
    }
}

ChiTerms chi_closed_form_terms(const AtomParams& atom, const FieldParams& fields) {
    atom.validate();
    fields.validate();
    require_resonant_rf(fields, "chi_closed_form_terms");
    const double g_ab = atom.gamma_ab();
    const cplx i_gC(0.0, atom.gamma_C);
    const cplx i_gCp(0.0, atom.gamma_Cprime);
    ChiTerms out;
    for (int s : {1, -1}) {
        const double off = s * 0.5 * fields.omega_b_rf;
        const cplx d = fields.delta_p - fields.delta_mu + off;
        const cplx a = cplx(fields.delta_p + off, -g_ab);
        cplx n, den;
        if (fields.omega_mu == 0.0) {
            // With the control off the c-manifold decouples from the probe
            // coherence and the whole resolvent collapses to the bare line
            // 1/a; the unreduced ratio would evaluate 0/0 wherever the
            // spectator factors vanish.
            n = cplx(1.0, 0.0);
            den = a;
        } else if (fields.omega_c_rf == 0.0) {
            // With the c-doublet drive off the factor (d - i gamma_C') cancels
            // between numerator and denominator; dividing it out first keeps
            // the dark-state point d = 0 finite instead of evaluating 0/0.
            n = d - i_gC;
            den = a * n - 0.25 * fields.omega_mu * fields.omega_mu;
        } else {
            n = (d - i_gC) * (d - i_gCp) - 0.25 * fields.omega_c_rf * fields.omega_c_rf;
            den = a * n - 0.25 * fields.omega_mu * fields.omega_mu * (d - i_gCp);
        }
        if (den == cplx(0.0, 0.0)) {
            throw std::runtime_error(
                "chi_closed_form_terms: pole hit in a lossless degenerate configuration");
        }
        (s == 1 ? out.t_plus : out.t_minus) = n / den;
    }
    return out;
}

cplx chi_reduced(const AtomParams& atom, const FieldParams& fields) {
    const ChiTerms t = chi_closed_form_terms(atom, fields);
    return (atom.gamma_ab() / 8.0) * (t.t_plus + t.t_minus);
}

cplx chi_reduced_full_population(const AtomParams& atom, const FieldParams& fields) {
    const ChiTerms t = chi_closed_form_terms(atom, fields);
    return (atom.gamma_ab() / 2.0) * (t.t_plus + t.t_minus);
}

cplx chi_standard_eit(const AtomParams& atom, double omega_mu, double delta_p,
                      double gamma_cb) {
    atom.validate();
    const double g_ab = atom.gamma_ab();
    const cplx num(delta_p, -gamma_cb);
    const cplx den = cplx(delta_p, -g_ab) * num - 0.25 * omega_mu * omega_mu;
    if (den == cplx(0.0, 0.0)) {
        throw std::runtime_error("chi_standard_eit: pole hit in a lossless degenerate configuration");
    }
    return 0.5 * g_ab * num / den;
}

NarrowResonancePair narrow_resonances(const AtomParams& atom, const FieldParams& fields) {
    atom.validate();
    fields.validate();
    if (fields.delta_mu != 0.0) {
        throw std::invalid_argument("narrow_resonances: derived for delta_mu = 0");
    }
    const double g_ab = atom.gamma_ab();
    const double w_b = std::hypot(fields.delta_b, fields.omega_b_rf);
    const double oc2 = fields.omega_c_rf * fields.omega_c_rf;
    const double om2 = fields.omega_mu * fields.omega_mu;

    NarrowResonancePair out;
    NarrowResonance r;
    r.fwhm = 2.0 * g_ab * (oc2 / om2 + atom.gamma_Cprime / g_ab);
    const double height_den = g_ab * oc2 + om2 * atom.gamma_Cprime;
    r.height = height_den > 0.0 ? 0.5 * oc2 * fields.omega_mu / height_den : 0.0;
    out.minus = r;
    out.minus.center = -0.5 * w_b;
    out.plus = r;
    out.plus.center = 0.5 * w_b;
    const double small = std::max({fields.omega_b_rf, fields.omega_c_rf,
                                   atom.gamma_C, atom.gamma_Cprime});
    out.validity_ok = 10.0 * small <= std::min(fields.omega_mu, g_ab);
    return out;
}

DressedExcitedTriplet dressed_excited_triplet(double omega_mu, double omega_c_rf,
                                              double omega_b_eff) {
    if (omega_mu < 0.0 || omega_c_rf < 0.0 || omega_b_eff < 0.0) {
        throw std::invalid_argument("dressed_excited_triplet: frequencies must be >= 0");
    }
    DressedExcitedTriplet out;
    out.theta = std::atan2(-omega_mu, omega_c_rf);
    const double e = 0.5 * std::hypot(omega_mu, omega_c_rf);
    out.e_plus = e;
    out.e_minus = -e;
    out.e_zero = 0.0;
    std::size_t k = 0;
    for (double level : {out.e_minus, out.e_zero, out.e_plus}) {
        for (double s : {-1.0, 1.0}) {
            out.transition_detunings[k++] = level + s * 0.5 * omega_b_eff;
        }
    }
    std::sort(out.transition_detunings.begin(), out.transition_detunings.end());
    return out;
}

ZeroDetuningResult chi_at_zero_detuning(const AtomParams& atom, const FieldParams& fields) {
    atom.validate();
    fields.validate();
    require_resonant_rf(fields, "chi_at_zero_detuning");
    const double g = atom.gamma_ab();
    const double gC = atom.gamma_C;
    const double gCp = atom.gamma_Cprime;
    const double ob2 = fields.omega_b_rf * fields.omega_b_rf;
    const double oc2 = fields.omega_c_rf * fields.omega_c_rf;
    const double om2 = fields.omega_mu * fields.omega_mu;
    const double split2 = (ob2 - oc2) * (ob2 - oc2);

    ZeroDetuningResult out;
    {
        const double num = g * (4.0 * g * split2 + (gC * ob2 + gCp * oc2) * om2);
        const double den = ob2 * split2
                         - 2.0 * (ob2 * ob2 + (g * gCp + ob2) * oc2) * om2
                         + ob2 * om2 * om2;
        out.im_chi = num / den;
    }
    {
        const double num = g * (-8.0 * g * (gC * ob2 * ob2 + (gC + 3.0 * gCp) * ob2 * oc2
                                            - gCp * oc2 * oc2) * om2
                                - ob2 * (ob2 + oc2) * om2 * om2);
        const double base = 8.0 * g * (gC * ob2 + gCp * oc2)
                          + ob2 * (-2.0 * ob2 + oc2 + om2);
        out.slope = num / (om2 * base * base);
    }
    out.im_chi_symmetric = (2.0 * gC * g / om2) * (1.0 + 2.0 * (g * gC + 2.0 * oc2) / om2);
    out.slope_symmetric = -(2.0 * g / om2) * (1.0 - 16.0 * g * gC / om2);
    const double small = std::max({fields.omega_b_rf, fields.omega_c_rf, gC, gCp});
    out.validity_ok = small <= 0.02 * g && fields.omega_mu >= g;
    return out;
}

}  // namespace eit5
