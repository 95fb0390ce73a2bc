#pragma once

#include "fwmix/field.hpp"

namespace fwmix {

// Parametric amplifier coefficients, all rates in 1/um. Defaults sit on the
// symmetric test slice: real eps_g with cosh^2(eps_g*L) = 30, a_cp = eps_g,
// everything else zero.
struct GainParameters {
    cplx eps_g{1.4031214112601826e-4, 0.0};
    cplx a_d{0.0, 0.0};   // bare in-bracket coefficient
    cplx a_pp{0.0, 0.0};  // probe self term
    cplx a_cc{0.0, 0.0};  // conjugate self term
    cplx a_cp{1.4031214112601826e-4, 0.0};
    double length_um = 17000.0;
};

void validate(const GainParameters& p);  // requires L > 0

enum class DkModelKind { RadialQuadratic, External };

struct DkModel {
    DkModelKind kind = DkModelKind::RadialQuadratic;
    // RadialQuadratic: dk = kappa*(theta^2 - theta_pm^2)/2, theta = rho/z.
    // Zero on the phase-matching cone, negative inside, positive outside.
    double theta_pm_rad = 0.017453292519943295;  // 1 degree
    double kappa = 20.0;                         // rad/um, curvature knob
    // External: per-sample values passed through unchanged.
    RealField2D external;
};

struct PhaseMismatchMap {
    GridSpec grid;
    std::vector<double> dk;  // rad/um, row-major
};

// Throws on shape mismatch for the External model.
PhaseMismatchMap build_dk_map(const GridSpec& grid, const DkModel& model, const OpticalConfig& cfg);

// Probe and conjugate gains versus phase mismatch. On the cone (dk = 0)
// these reduce to |e^{da L}(cosh(eL) + (a_d/e) sinh(eL))|^2 and
// |e^{da L}(a_cp/e) sinh(eL)|^2 with e = eps_g and da = (a_pp - a_cc)/2;
// off the cone the mismatch detunes the effective rate,
//   e_eff = sqrt(eps_g^2 + (a_d + i dk/2)^2 - a_d^2),
// which rolls the gain off smoothly. The eps -> 0 limit is series-handled.
double gain_probe(double dk, const GainParameters& p);
double gain_conjugate(double dk, const GainParameters& p);

enum class GainBranch { Probe, Conjugate };

// Gain evaluated per sample, divided by its maximum over the grid (first
// occurrence in row-major order decides ties). Peak is exactly 1.
// Throws if every gain sample is zero.
RealField2D soft_aperture_mask(const PhaseMismatchMap& map, const GainParameters& p, GainBranch which);

// Pointwise product of an intensity image with a transmission mask.
RealField2D apply_soft_aperture(const RealField2D& intensity_image, const RealField2D& mask);

}  // namespace fwmix
