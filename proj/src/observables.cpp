#include "eit5/observables.hpp"

#include "eit5/analytic.hpp"
#include "eit5/dynamics.hpp"
#include "eit5/steady_state.hpp"

#include <cmath>
#include <stdexcept>

namespace eit5 {

cplx chi_by_method(const AtomParams& atom, const FieldParams& fields, Method method) {
    switch (method) {
        case Method::analytic: return chi_reduced(atom, fields);
        case Method::linear_solve: return chi_linear_solve(atom, fields);
        case Method::time_domain: return chi_time_domain(atom, fields);
    }
    throw std::logic_error("chi_by_method: unknown method");
}

SlopeEstimate dispersion_slope(const std::function<cplx(double)>& chi_fn,
                               double delta_p, double step) {
    if (step <= 0.0) throw std::invalid_argument("dispersion_slope: step must be > 0");
    const auto central = [&](double h) {
        return (chi_fn(delta_p + h).real() - chi_fn(delta_p - h).real()) / (2.0 * h);
    };
    const double d1 = central(step);
    const double d2 = central(0.5 * step);
    SlopeEstimate out;
    out.value = (4.0 * d2 - d1) / 3.0;  // eliminates the O(h^2) error term
    out.error = std::abs(d2 - d1);
    return out;
}

double local_feature_width(const AtomParams& atom, const FieldParams& fields) {
    const double g_ab = atom.gamma_ab();
    if (fields.omega_c_rf > 0.0 || atom.gamma_Cprime > 0.0) {
        const double oc2 = fields.omega_c_rf * fields.omega_c_rf;
        const double om2 = fields.omega_mu * fields.omega_mu;
        const double narrow = om2 > 0.0
            ? 2.0 * g_ab * (oc2 / om2 + atom.gamma_Cprime / g_ab)
            : 2.0 * atom.gamma_Cprime;
        if (narrow > 0.0) return std::min(narrow, g_ab);
    }
    return g_ab;
}

double absorption_coefficient(cplx chi_reduced_value, const PhysicalScaling& scaling) {
    return scaling.k_p * scaling.prefactor * chi_reduced_value.imag();
}

double refractive_index(cplx chi_reduced_value, const PhysicalScaling& scaling) {
    const double arg = 1.0 + scaling.prefactor * chi_reduced_value.real();
    if (arg <= 0.0) {
        throw std::runtime_error("refractive_index: 1 + Re chi is not positive");
    }
    return std::sqrt(arg);
}

double dchi_domega_si(double slope_reduced, const PhysicalScaling& scaling) {
    // delta_p = omega_a - omega_b - nu_p falls as nu_p rises, and delta_p is
    // measured in gamma_ab units while omega_p is in rad/s.
    return -scaling.prefactor * slope_reduced / scaling.gamma_ab_si;
}

double group_velocity(double n, double dchi_domega, const PhysicalScaling& scaling) {
    const double den = n + 0.5 * scaling.omega_p_abs / n * dchi_domega;
    if (den == 0.0) throw std::runtime_error("group_velocity: vanishing denominator");
    return speed_of_light / den;
}

static double vg_at(const AtomParams& atom, const FieldParams& fields,
                    const PhysicalScaling& scaling, double delta_p, Method method) {
    FieldParams f = fields;
    const auto chi_fn = [&](double dp) {
        f.delta_p = dp;
        return chi_by_method(atom, f, method);
    };
    const double step = 1e-4 * local_feature_width(atom, fields);
    const SlopeEstimate slope = dispersion_slope(chi_fn, delta_p, step);
    f.delta_p = delta_p;
    const double n = refractive_index(chi_by_method(atom, f, method), scaling);
    return group_velocity(n, dchi_domega_si(slope.value, scaling), scaling);
}

double group_velocity_ratio(const AtomParams& atom, const FieldParams& fields,
                            const PhysicalScaling& scaling, double delta_p,
                            Method method) {
    scaling.validate();
    if (fields.omega_b_rf == 0.0 && fields.omega_c_rf == 0.0) return 1.0;
    const double vg = vg_at(atom, fields, scaling, delta_p, method);
    FieldParams reference = fields;
    reference.omega_b_rf = 0.0;
    reference.omega_c_rf = 0.0;
    const double vg_eit = vg_at(atom, reference, scaling, delta_p, method);
    if (vg_eit == 0.0) throw std::runtime_error("group_velocity_ratio: reference velocity is zero");
    return vg / vg_eit;
}

double delay_time(double vg, double sample_length) {
    if (vg <= 0.0 || sample_length <= 0.0) {
        throw std::invalid_argument("delay_time: vg and sample_length must be > 0");
    }
    return sample_length * (1.0 / vg - 1.0 / speed_of_light);
}

SpectrumPoint compute_spectrum_point(const AtomParams& atom, const FieldParams& fields,
                                     const PhysicalScaling& scaling, Method method,
                                     double sample_length) {
    SpectrumPoint out;
    out.delta_p = fields.delta_p;
    out.chi = chi_by_method(atom, fields, method);
    out.alpha = absorption_coefficient(out.chi, scaling);
    out.n = refractive_index(out.chi, scaling);

    FieldParams f = fields;
    const auto chi_fn = [&](double dp) {
        f.delta_p = dp;
        return chi_by_method(atom, f, method);
    };
    const double step = 1e-4 * local_feature_width(atom, fields);
    out.slope = dispersion_slope(chi_fn, fields.delta_p, step).value;
    out.vg_ratio = group_velocity_ratio(atom, fields, scaling, fields.delta_p, method);

    const double vg = group_velocity(out.n, dchi_domega_si(out.slope, scaling), scaling);
    out.delay = vg > 0.0 ? delay_time(vg, sample_length) : 0.0;
    return out;
}

}  // namespace eit5
