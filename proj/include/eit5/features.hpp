#pragma once

#include "eit5/analytic.hpp"

#include <vector>

namespace eit5 {

struct Peak {
    double center = 0.0;        // grid position of the maximum
    double height = 0.0;        // value at the maximum
    double fwhm = 0.0;          // width at half of (height - local baseline); 0 if no crossing found
    double prominence = 0.0;    // height above the higher of the two bounding minima
    double baseline = 0.0;      // the higher bounding-minimum value
    bool under_resolved = false; // fewer than 8 samples across the width
    bool width_found = true;    // false when a half-height crossing never occurred
};

// Local maxima of y(x) with at least the requested prominence.  The baseline
// of each peak is the higher of the two minima separating it from taller
// terrain (or the grid edge), and the width is measured at half of the
// height above that baseline, with linearly interpolated crossings.
std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y,
                             double min_prominence);

struct FeaturePairing {
    NarrowResonance predicted;
    Peak measured;
    double center_error = 0.0;       // |measured - predicted| [gamma_ab]
    double fwhm_rel_error = 0.0;     // |measured/predicted - 1|
    double height_rel_error = 0.0;   // |measured/predicted - 1|
    bool matched = false;
};

struct FeatureReport {
    std::vector<Peak> peaks;               // all detected maxima, sorted by center
    std::vector<FeaturePairing> pairings;  // narrow-resonance predictions vs measurement
};

// Peak detection plus, when predictions are supplied, pairing of each
// predicted narrow resonance with the nearest measured peak.
FeatureReport extract_features(const std::vector<double>& x, const std::vector<double>& y,
                               double min_prominence,
                               const NarrowResonancePair* predictions = nullptr);

struct LorentzianFit {
    double center = 0.0;
    double fwhm = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;       // constant background
    double tilt = 0.0;         // linear background slope
    bool converged = false;
    double rms = 0.0;          // root-mean-square residual
};

// Least-squares fit of A/(1 + 4(x-c)^2/w^2) + b0 + b1 (x-c) to the samples
// inside |x - center_guess| <= window.  The linear parameters (A, b0, b1)
// are solved exactly for each trial (c, w); Gauss-Newton with step damping
// refines the nonlinear pair.  Separates a narrow peak from the smooth
// shoulder underneath it, which plain half-height readings cannot.
LorentzianFit fit_lorentzian_peak(const std::vector<double>& x, const std::vector<double>& y,
                                  double center_guess, double fwhm_guess, double window);

}  // namespace eit5
