#include "fwmix/propagation.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fwmix/bessel.hpp"

namespace fwmix {

namespace {

// The FFTW planner is not thread safe; execution of a finished plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place forward DFT with the origin at sample (n/2, n/2) in both planes,
// realized by checkerboard pre/post multiplication. For power-of-two sizes
// divisible by four the leftover constant phase e^{-i pi (nx+ny)/2} is unity.
void centered_dft2(ComplexField2D& field) {
    const int nx = field.grid.nx;
    const int ny = field.grid.ny;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if ((i + j) & 1) field.at(i, j) = -field.at(i, j);
        }
    }
    auto* data = reinterpret_cast<fftw_complex*>(field.samples.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(ny, nx, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("FFT planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if ((i + j) & 1) field.at(i, j) = -field.at(i, j);
        }
    }
}

GridSpec conjugate_grid(const GridSpec& in, double lambda_um, double dist_um, Plane plane) {
    GridSpec out = in;
    out.pitch_x = lambda_um * dist_um / (in.nx * in.pitch_x);
    out.pitch_y = lambda_um * dist_um / (in.ny * in.pitch_y);
    out.plane = plane;
    return out;
}

ComplexField2D transform_plane(const ComplexField2D& field, const OpticalConfig& cfg,
                               double dist_um, Plane out_plane, const PropagationOptions& opts,
                               bool internal_chirp, cplx external_constant) {
    validate(cfg);
    ComplexField2D work = field;
    const double k = cfg.k();
    if (opts.include_prefactor && internal_chirp) {
        for (int j = 0; j < work.grid.ny; ++j) {
            const double y = work.grid.y(j);
            for (int i = 0; i < work.grid.nx; ++i) {
                const double x = work.grid.x(i);
                work.at(i, j) *= std::polar(1.0, k * (x * x + y * y) / (2.0 * dist_um));
            }
        }
    }
    centered_dft2(work);
    work.grid = conjugate_grid(field.grid, cfg.lambda_um, dist_um, out_plane);

    const double area = field.grid.pitch_x * field.grid.pitch_y;
    cplx scale = opts.norm == FtNormalization::Physical
                     ? area / (cplx(0.0, 1.0) * cfg.lambda_um * dist_um)
                     : cplx(area / (cfg.lambda_um * dist_um), 0.0);
    if (opts.include_prefactor) scale *= external_constant;
    for (cplx& u : work.samples) u *= scale;

    if (opts.include_prefactor) {
        for (int j = 0; j < work.grid.ny; ++j) {
            const double y = work.grid.y(j);
            for (int i = 0; i < work.grid.nx; ++i) {
                const double x = work.grid.x(i);
                work.at(i, j) *= std::polar(1.0, k * (x * x + y * y) / (2.0 * dist_um));
            }
        }
    }
    return work;
}

}  // namespace

PropagationResult fraunhofer_numeric(const ComplexField2D& field, const OpticalConfig& cfg,
                                     const PropagationOptions& opts) {
    // prefactor e^{ikz} e^{ik rho^2/2z}; no internal chirp in the far-field integral
    ComplexField2D out = transform_plane(field, cfg, cfg.z_um, Plane::Lens, opts,
                                         /*internal_chirp=*/false,
                                         std::polar(1.0, cfg.k() * cfg.z_um));
    return PropagationResult{std::move(out), opts.include_prefactor};
}

cplx annular_ring_ft(double rho_um, const AnnulusSpec& spec, const OpticalConfig& cfg) {
    validate(spec);
    validate(cfg);
    if (rho_um < 0.0) throw std::invalid_argument("radius must be non-negative");
    const double k = cfg.k();
    const double z = cfg.z_um;
    if (rho_um == 0.0) return k * (spec.a1_um * spec.a1_um - spec.a0_um * spec.a0_um) / 2.0;
    const double t = rho_um / z;
    return (spec.a1_um * bessel_j1(k * spec.a1_um * t) - spec.a0_um * bessel_j1(k * spec.a0_um * t)) / t;
}

cplx gaussian_far_field(double rho_um, const GaussianSpec& spec, const OpticalConfig& cfg) {
    const double w = spec.waist_um;
    const double arg = cfg.k() * w * rho_um / (2.0 * cfg.z_um);
    const double mag = std::numbers::pi * w * w * std::exp(-arg * arg);
    return mag / (cplx(0.0, 1.0) * cfg.lambda_um * cfg.z_um);
}

ComplexField2D gaussian_annulus_farfield(const GridSpec& grid, const GaussianSpec& gspec,
                                         const AnnulusSpec& aspec, const OpticalConfig& cfg) {
    ComplexField2D apertured = apply_mask(gaussian_field(grid, gspec), annulus_mask(grid, aspec));
    return fraunhofer_numeric(apertured, cfg, {}).field;
}

ComplexField2D gaussian_annulus_farfield_conv(const GridSpec& grid, const GaussianSpec& gspec,
                                              const AnnulusSpec& aspec, const OpticalConfig& cfg) {
    validate(gspec);
    validate(aspec);
    validate(cfg);
    const double lz = cfg.lambda_um * cfg.z_um;
    const GridSpec out = conjugate_grid(grid, cfg.lambda_um, cfg.z_um, Plane::Lens);

    // Both closed forms sampled on the output grid. The ring form carries a
    // factor lambda relative to the bare aperture Fourier integral.
    ComplexField2D ga = make_field(out);
    ComplexField2D ring = make_field(out);
    const double w = gspec.waist_um;
    const double gk = cfg.k() * w / (2.0 * cfg.z_um);
    for (int j = 0; j < out.ny; ++j) {
        const double y = out.y(j);
        for (int i = 0; i < out.nx; ++i) {
            const double rho = std::hypot(out.x(i), y);
            const double arg = gk * rho;
            ga.at(i, j) = std::numbers::pi * w * w * std::exp(-arg * arg);
            ring.at(i, j) = cfg.lambda_um * annular_ring_ft(rho, aspec, cfg).real();
        }
    }

    // Circular convolution via the DFT; both factors decay well inside the
    // window. ifftshift/fftshift reduce to one checkerboard on even grids,
    // which centered_dft2 already applies on both ends.
    centered_dft2(ga);
    centered_dft2(ring);
    for (std::size_t n = 0; n < ga.samples.size(); ++n) ga.samples[n] *= ring.samples[n];
    // inverse transform = conjugate, forward, conjugate, 1/N
    for (cplx& u : ga.samples) u = std::conj(u);
    centered_dft2(ga);
    const double nxy = static_cast<double>(out.nx) * out.ny;
    for (cplx& u : ga.samples) u = std::conj(u) / nxy;

    const cplx scale = out.pitch_x * out.pitch_y /
                       (lz * lz * cplx(0.0, 1.0) * cfg.lambda_um * cfg.z_um);
    for (cplx& u : ga.samples) u *= scale;
    ga.grid = out;
    return ga;
}

ComplexField2D lens_ft(const ComplexField2D& field, const OpticalConfig& cfg,
                       const PropagationOptions& opts) {
    // external constant e^{-ikf}; internal chirp and focal-plane chirp are
    // quadratic with the same 1/2f curvature
    return transform_plane(field, cfg, cfg.f_um, Plane::Focal, opts,
                           /*internal_chirp=*/true, std::polar(1.0, -cfg.k() * cfg.f_um));
}

}  // namespace fwmix
