#pragma once

#include "fwmix/field.hpp"

namespace fwmix {

enum class Orientation { Vertical, Horizontal };

struct GaussianSpec {
    double waist_um = 849.3218002880191;  // 1 mm intensity FWHM
    double center_x_um = 0.0;
    double center_y_um = 0.0;
};

struct AnnulusSpec {
    double a0_um = 200.0;  // inner radius
    double a1_um = 400.0;  // outer radius

    double eps_ratio() const { return a0_um / a1_um; }
};

struct SlitSpec {
    double width_um = 400.0;  // full width
    Orientation orientation = Orientation::Vertical;
};

void validate(const GaussianSpec& spec);
void validate(const AnnulusSpec& spec);  // requires 0 <= a0 < a1
void validate(const SlitSpec& spec);

// Hard-edged circle function: 1 for t <= 1, 0 beyond. Inclusive boundary.
// Throws std::invalid_argument for negative t.
double circ(double t);

// circ(rho/a1) - circ(rho/a0): 1 iff a0 < rho <= a1.
double annulus_transmission(double rho_um, const AnnulusSpec& spec);

// 1 iff |coordinate along the blocking axis| <= width/2 (inclusive).
// A vertical slit blocks on x, a horizontal one on y.
double slit_transmission(double coord_um, const SlitSpec& spec);

// amplitude exp(-(rho'/w)^2), peak 1 at the center offset
ComplexField2D gaussian_field(const GridSpec& grid, const GaussianSpec& spec);

// Transmission sampled at pixel centers. Deliberately binary: no gray edge
// pixels, so masks match the analytic transmission exactly at every sample.
RealField2D annulus_mask(const GridSpec& grid, const AnnulusSpec& spec);
RealField2D slit_mask(const GridSpec& grid, const SlitSpec& spec);

// Pointwise product. Throws on grid shape mismatch.
ComplexField2D apply_mask(const ComplexField2D& field, const RealField2D& mask);

}  // namespace fwmix
