#include "fwmix/gain.hpp"

#include <cmath>
#include <stdexcept>

#include "fwmix/bessel.hpp"

namespace fwmix {

void validate(const GainParameters& p) {
    if (!(p.length_um > 0.0)) throw std::invalid_argument("interaction length must be positive");
}

PhaseMismatchMap build_dk_map(const GridSpec& grid, const DkModel& model, const OpticalConfig& cfg) {
    validate(cfg);
    PhaseMismatchMap map;
    map.grid = grid;
    map.dk.resize(grid.size());
    if (model.kind == DkModelKind::External) {
        if (!model.external.grid.same_shape(grid))
            throw std::invalid_argument("external mismatch map shape does not match grid");
        map.dk = model.external.samples;
        return map;
    }
    const double tpm2 = model.theta_pm_rad * model.theta_pm_rad;
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double theta = std::hypot(x, y) / cfg.z_um;
            map.dk[static_cast<std::size_t>(j) * grid.nx + i] =
                model.kappa * (theta * theta - tpm2) / 2.0;
        }
    }
    return map;
}

namespace {

struct BranchAmplitudes {
    cplx probe;
    cplx conjugate;
};

// Shared two-mode solution. The mismatch enters the self terms as +i dk/2 on
// the probe and -i dk/2 on the conjugate, so the common exponent picks up
// i dk/2 and the in-bracket coefficient becomes a_d + i dk/2; the effective
// rate keeps eps_g^2 - a_d^2 fixed.
BranchAmplitudes amplitudes(double dk, const GainParameters& p) {
    const double L = p.length_um;
    const cplx half_idk(0.0, dk / 2.0);
    const cplx da = (p.a_pp - p.a_cc) / 2.0 + half_idk;
    const cplx a_eff = p.a_d + half_idk;
    const cplx e_eff = std::sqrt(p.eps_g * p.eps_g + a_eff * a_eff - p.a_d * p.a_d);
    const cplx common = std::exp(da * L);
    const cplx sh = sinhc(e_eff * L) * L;  // sinh(e_eff L)/e_eff, finite at 0
    return {common * (std::cosh(e_eff * L) + a_eff * sh),
            common * (p.a_cp * sh)};
}

}  // namespace

double gain_probe(double dk, const GainParameters& p) {
    validate(p);
    return std::norm(amplitudes(dk, p).probe);
}

double gain_conjugate(double dk, const GainParameters& p) {
    validate(p);
    return std::norm(amplitudes(dk, p).conjugate);
}

RealField2D soft_aperture_mask(const PhaseMismatchMap& map, const GainParameters& p,
                               GainBranch which) {
    validate(p);
    RealField2D mask;
    mask.grid = map.grid;
    mask.samples.resize(map.dk.size());
    double peak = 0.0;
    std::size_t peak_index = map.dk.size();
    for (std::size_t n = 0; n < map.dk.size(); ++n) {
        const BranchAmplitudes amps = amplitudes(map.dk[n], p);
        const double g = std::norm(which == GainBranch::Probe ? amps.probe : amps.conjugate);
        mask.samples[n] = g;
        if (g > peak) {
            peak = g;
            peak_index = n;
        }
    }
    if (!(peak > 0.0)) throw std::runtime_error("gain mask is identically zero");
    for (double& g : mask.samples) g /= peak;
    mask.samples[peak_index] = 1.0;
    return mask;
}

RealField2D apply_soft_aperture(const RealField2D& intensity_image, const RealField2D& mask) {
    if (!intensity_image.grid.same_shape(mask.grid))
        throw std::invalid_argument("mask shape does not match image");
    RealField2D out = intensity_image;
    for (std::size_t n = 0; n < out.samples.size(); ++n) out.samples[n] *= mask.samples[n];
    return out;
}

}  // namespace fwmix
