#pragma once

#include <optional>

#include "fwmix/field.hpp"
#include "fwmix/sources.hpp"

namespace fwmix {

enum class ProfileUnit { Micrometers, Pixels };

struct RadialProfile {
    std::vector<double> positions;    // strictly increasing
    std::vector<double> intensities;  // >= 0
    ProfileUnit unit = ProfileUnit::Micrometers;
    double normalization = 1.0;  // peak value the intensities refer to
};

struct AiryFit {
    double eps_ratio = 0.5;  // in [0, 0.99]
    double i0 = 1.0;         // peak intensity
    double scale = 1.0;      // position units per unit of v
    double center = 0.0;     // position units
    double offset = 0.0;     // additive background, fitted only on request
    double residual = 0.0;   // sum of squared residuals
    int iterations = 0;
    bool converged = true;
};

// Obscured-aperture radial intensity law:
//   I(v) = [2*J1(v)/v - eps^2 * 2*J1(eps*v)/(eps*v)]^2 / (1 - eps^2)^2 * i0
// Exact analytic limits at v = 0 (returns i0) and eps*v = 0. Even in v.
// Throws for eps_ratio outside [0, 1).
double annular_airy_intensity(double v, double eps_ratio, double i0);

// Averages `width` adjacent rows (Horizontal) or columns (Vertical) centered
// on (cx, cy) and returns the profile along the orthogonal axis, positions in
// grid coordinates. For even widths the band extends one pixel further on
// the high side. Throws if the band leaves the image.
RadialProfile extract_slice(const RealField2D& image, Orientation orientation, int cx, int cy,
                            int width = 10);

struct FitOptions {
    std::optional<double> eps0;  // explicit starting ratio; otherwise multi-start
    bool with_offset = false;    // fit an additive background term
};

// Least-squares fit of annular_airy_intensity over (eps_ratio, i0, scale,
// center) by Levenberg-Marquardt with an analytic Jacobian. The model is
// even in eps, so the iteration runs unconstrained and reports |eps|.
// Initial guess: center at the smoothed argmax, i0 at the peak, scale from
// the first-minimum spacing; without an explicit eps0 the fit is restarted
// from a small ladder of ratios and the lowest residual wins.
// Throws on degenerate input (< 20 samples, or constant/all-zero).
AiryFit fit_airy(const RadialProfile& profile, const FitOptions& opts = {});

struct ProfileComparison {
    double nrmse = 0.0;        // peak-normalized, resampled onto the overlap
    double peak_offset = 0.0;  // between principal maxima, in a's units
    bool unit_mismatch = false;
};

// Peak-normalizes both profiles, linearly resamples b onto a's positions
// restricted to the overlapping range, and reports the normalized RMS error
// plus the distance between the two principal maxima. Optional position
// scales are applied first (for unit reconciliation). Throws if the ranges
// are disjoint. Differing recorded units without explicit scales set the
// unit_mismatch flag.
ProfileComparison compare_profiles(const RadialProfile& a, const RadialProfile& b,
                                   double scale_a = 1.0, double scale_b = 1.0);

}  // namespace fwmix
