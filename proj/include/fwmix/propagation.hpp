#pragma once

#include "fwmix/field.hpp"
#include "fwmix/sources.hpp"

namespace fwmix {

enum class FtNormalization {
    Physical,  // pitch_x*pitch_y/(i*lambda*d) scale, d = z or f
    Unitary,   // pitch_x*pitch_y/(lambda*d): conserves total power exactly
};

struct PropagationOptions {
    FtNormalization norm = FtNormalization::Physical;
    // Quadratic phase prefactors are carried symbolically by default: the
    // chirp e^{ik rho^2/2d} aliases at the default grid extents and every
    // downstream comparison is intensity based. Set to true to multiply the
    // unit-modulus phase factors in.
    bool include_prefactor = false;
};

struct PropagationResult {
    ComplexField2D field;  // output plane, pitch = lambda*d/(N*pitch_in)
    bool phase_prefactor_included = false;
};

// Far-field (Fraunhofer) propagation over distance cfg.z_um: centered 2D DFT
// of the input samples times the chosen scale. Output pitch per axis is
// exactly lambda*z/(N*pitch_in); output plane label is Lens.
PropagationResult fraunhofer_numeric(const ComplexField2D& field, const OpticalConfig& cfg,
                                     const PropagationOptions& opts = {});

// Closed-form far field of a hard annulus under unit plane-wave illumination:
//   [a1*J1(k*a1*rho/z) - a0*J1(k*a0*rho/z)] / (rho/z),
// with the rho->0 limit k*(a1^2-a0^2)/2. Relates to the bare aperture
// Fourier integral by the constant factor lambda.
cplx annular_ring_ft(double rho_um, const AnnulusSpec& spec, const OpticalConfig& cfg);

// Closed-form far field of a centered Gaussian source, physical scale:
//   pi*w^2*exp(-(k*w*rho/(2z))^2) / (i*lambda*z)
cplx gaussian_far_field(double rho_um, const GaussianSpec& spec, const OpticalConfig& cfg);

// Far field of the Gaussian-illuminated annulus, numeric path:
// fraunhofer_numeric(apply_mask(gaussian_field, annulus_mask)), physical
// normalization, no prefactor. grid is the aperture-plane sampling.
ComplexField2D gaussian_annulus_farfield(const GridSpec& grid, const GaussianSpec& gspec,
                                         const AnnulusSpec& aspec, const OpticalConfig& cfg);

// Same far field evaluated as the convolution of the two closed forms on the
// output grid (the convolution-theorem route; serves as the independent
// oracle for the numeric path). Centered specs assumed.
ComplexField2D gaussian_annulus_farfield_conv(const GridSpec& grid, const GaussianSpec& gspec,
                                              const AnnulusSpec& aspec, const OpticalConfig& cfg);

// Lens Fourier transform, lens plane -> focal plane, output pitch
// lambda*f/(N*pitch_in). With include_prefactor set, applies the internal
// chirp e^{ik rho^2/2f} before the transform and the external factor
// e^{-ikf} e^{ik rho_f^2/2f} after it; both are unit modulus.
ComplexField2D lens_ft(const ComplexField2D& field, const OpticalConfig& cfg,
                       const PropagationOptions& opts = {});

}  // namespace fwmix
