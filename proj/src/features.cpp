#include "eit5/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eit5 {

static void check_grid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("feature extraction: size mismatch");
    if (x.size() < 3) throw std::invalid_argument("feature extraction: need at least 3 samples");
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] <= x[i - 1]) throw std::invalid_argument("feature extraction: x must be increasing");
    }
}

// Interpolated x where y crosses `level` between samples i and i+1.
static double crossing(const std::vector<double>& x, const std::vector<double>& y,
                       std::size_t i, double level) {
    const double dy = y[i + 1] - y[i];
    if (dy == 0.0) return x[i];
    const double t = (level - y[i]) / dy;
    return x[i] + t * (x[i + 1] - x[i]);
}

std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y,
                             double min_prominence) {
    check_grid(x, y);
    const std::size_t n = x.size();
    std::vector<Peak> out;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;

        // Walk outward until taller terrain (or the edge); the lowest point
        // passed on each side bounds this peak.
        double left_min = y[i];
        for (std::size_t j = i; j-- > 0;) {
            left_min = std::min(left_min, y[j]);
            if (y[j] > y[i]) break;
        }
        double right_min = y[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            right_min = std::min(right_min, y[j]);
            if (y[j] > y[i]) break;
        }
        Peak p;
        p.center = x[i];
        p.height = y[i];
        p.baseline = std::max(left_min, right_min);
        p.prominence = y[i] - p.baseline;
        if (p.prominence < min_prominence) continue;

        const double half = p.baseline + 0.5 * p.prominence;
        double x_left = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] < half) { x_left = crossing(x, y, j, half); break; }
            if (y[j] > y[i]) break;
        }
        double x_right = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y[j] < half) { x_right = crossing(x, y, j - 1, half); break; }
            if (y[j] > y[i]) break;
        }
        if (std::isnan(x_left) || std::isnan(x_right)) {
            p.width_found = false;
            p.fwhm = 0.0;
        } else {
            p.fwhm = x_right - x_left;
            std::size_t inside = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (x[j] >= x_left && x[j] <= x_right) ++inside;
            }
            p.under_resolved = inside < 8;
        }
        out.push_back(p);
    }
    return out;
}

FeatureReport extract_features(const std::vector<double>& x, const std::vector<double>& y,
                               double min_prominence,
                               const NarrowResonancePair* predictions) {
    FeatureReport report;
    report.peaks = find_peaks(x, y, min_prominence);
    if (predictions == nullptr) return report;

    for (const NarrowResonance& pred : {predictions->minus, predictions->plus}) {
        FeaturePairing pair;
        pair.predicted = pred;
        double best = std::numeric_limits<double>::infinity();
        for (const Peak& p : report.peaks) {
            const double d = std::abs(p.center - pred.center);
            if (d < best) {
                best = d;
                pair.measured = p;
                pair.matched = true;
            }
        }
        if (pair.matched) {
            pair.center_error = best;
            pair.fwhm_rel_error = pred.fwhm > 0.0 && pair.measured.width_found
                                      ? std::abs(pair.measured.fwhm / pred.fwhm - 1.0)
                                      : std::numeric_limits<double>::quiet_NaN();
            pair.height_rel_error = pred.height > 0.0
                                        ? std::abs(pair.measured.height / pred.height - 1.0)
                                        : std::numeric_limits<double>::quiet_NaN();
        }
        report.pairings.push_back(pair);
    }
    return report;
}

// Solves the 3x3 normal equations for (A, b0, b1) given the trial shape, and
// returns the summed squared residual.
static double linear_subfit(const std::vector<double>& xs, const std::vector<double>& ys,
                            double c, double w, double out[3]) {
    double g[3][3] = {{0.0}};
    double rhs[3] = {0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double u = xs[k] - c;
        const double phi = 1.0 / (1.0 + 4.0 * u * u / (w * w));
        const double basis[3] = {phi, 1.0, u};
        for (int i = 0; i < 3; ++i) {
            rhs[i] += basis[i] * ys[k];
            for (int j = 0; j < 3; ++j) g[i][j] += basis[i] * basis[j];
        }
    }
    // Gaussian elimination with partial pivoting on the tiny real system.
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
        if (g[piv][col] == 0.0) return std::numeric_limits<double>::infinity();
        std::swap(g[col], g[piv]);
        std::swap(rhs[col], rhs[piv]);
        std::swap(perm[col], perm[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = g[r][col] / g[col][col];
            for (int j = col; j < 3; ++j) g[r][j] -= f * g[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int i = 2; i >= 0; --i) {
        double s = rhs[i];
        for (int j = i + 1; j < 3; ++j) s -= g[i][j] * out[j];
        out[i] = s / g[i][i];
    }

    double ss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double u = xs[k] - c;
        const double phi = 1.0 / (1.0 + 4.0 * u * u / (w * w));
        const double model = out[0] * phi + out[1] + out[2] * u;
        const double r = ys[k] - model;
        ss += r * r;
    }
    return ss;
}

LorentzianFit fit_lorentzian_peak(const std::vector<double>& x, const std::vector<double>& y,
                                  double center_guess, double fwhm_guess, double window) {
    check_grid(x, y);
    if (fwhm_guess <= 0.0 || window <= 0.0) {
        throw std::invalid_argument("fit_lorentzian_peak: fwhm_guess and window must be > 0");
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i] - center_guess) <= window) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    if (xs.size() < 6) {
        throw std::invalid_argument("fit_lorentzian_peak: fewer than 6 samples in the window");
    }

    double c = center_guess, w = fwhm_guess;
    double lin[3] = {0.0, 0.0, 0.0};
    double ss = linear_subfit(xs, ys, c, w, lin);

    LorentzianFit fit;
    for (int iter = 0; iter < 60; ++iter) {
        // Gauss-Newton on (c, w) with finite-difference sensitivities of the
        // projected objective, damped until the residual decreases.
        const double hc = 1e-4 * w, hw = 1e-4 * w;
        double tmp[3];
        const double sc = (linear_subfit(xs, ys, c + hc, w, tmp)
                           - linear_subfit(xs, ys, c - hc, w, tmp)) / (2.0 * hc);
        const double sw = (linear_subfit(xs, ys, c, w + hw, tmp)
                           - linear_subfit(xs, ys, c, w - hw, tmp)) / (2.0 * hw);
        const double scc = (linear_subfit(xs, ys, c + hc, w, tmp) - 2.0 * ss
                            + linear_subfit(xs, ys, c - hc, w, tmp)) / (hc * hc);
        const double sww = (linear_subfit(xs, ys, c, w + hw, tmp) - 2.0 * ss
                            + linear_subfit(xs, ys, c, w - hw, tmp)) / (hw * hw);
        double dc = scc > 0.0 ? -sc / scc : 0.0;
        double dw = sww > 0.0 ? -sw / sww : 0.0;
        // keep steps within a fraction of the current width
        const double cap = 0.5 * w;
        dc = std::clamp(dc, -cap, cap);
        dw = std::clamp(dw, -cap, cap);

        bool accepted = false;
        for (int halving = 0; halving < 12; ++halving) {
            const double c_try = c + dc;
            const double w_try = std::max(w + dw, 1e-3 * fwhm_guess);
            const double ss_try = linear_subfit(xs, ys, c_try, w_try, tmp);
            if (ss_try < ss) {
                const double rel = (std::abs(c_try - c) + std::abs(w_try - w)) / w;
                c = c_try;
                w = w_try;
                ss = ss_try;
                accepted = true;
                if (rel < 1e-10) fit.converged = true;
                break;
            }
            dc *= 0.5;
            dw *= 0.5;
        }
        if (!accepted) {
            fit.converged = true;  // no descent direction left: at the minimum
            break;
        }
        if (fit.converged) break;
    }

    linear_subfit(xs, ys, c, w, lin);
    fit.center = c;
    fit.fwhm = w;
    fit.amplitude = lin[0];
    fit.offset = lin[1];
    fit.tilt = lin[2];
    fit.rms = std::sqrt(ss / static_cast<double>(xs.size()));
    return fit;
}

}  // namespace eit5
