#include "fwmix/sources.hpp"

#include <cmath>
#include <stdexcept>

namespace fwmix {

void validate(const GaussianSpec& spec) {
    if (!(spec.waist_um > 0.0)) throw std::invalid_argument("gaussian waist must be positive");
}

void validate(const AnnulusSpec& spec) {
    if (!(spec.a0_um >= 0.0) || !(spec.a1_um > spec.a0_um)) {
        throw std::invalid_argument("annulus requires 0 <= a0 < a1");
    }
}

void validate(const SlitSpec& spec) {
    if (!(spec.width_um > 0.0)) throw std::invalid_argument("slit width must be positive");
}

double circ(double t) {
    if (t < 0.0) throw std::invalid_argument("circ argument must be non-negative");
    return t <= 1.0 ? 1.0 : 0.0;
}

double annulus_transmission(double rho_um, const AnnulusSpec& spec) {
    const double outer = circ(rho_um / spec.a1_um);
    // a0 = 0 degenerates to a plain circular aperture
    const double inner = spec.a0_um > 0.0 ? circ(rho_um / spec.a0_um) : (rho_um <= 0.0 ? 1.0 : 0.0);
    return outer - inner;
}

double slit_transmission(double coord_um, const SlitSpec& spec) {
    return std::fabs(coord_um) <= spec.width_um / 2.0 ? 1.0 : 0.0;
}

ComplexField2D gaussian_field(const GridSpec& grid, const GaussianSpec& spec) {
    validate(spec);
    ComplexField2D out = make_field(grid);
    const double inv_w2 = 1.0 / (spec.waist_um * spec.waist_um);
    for (int j = 0; j < grid.ny; ++j) {
        const double dy = grid.y(j) - spec.center_y_um;
        for (int i = 0; i < grid.nx; ++i) {
            const double dx = grid.x(i) - spec.center_x_um;
            out.at(i, j) = std::exp(-(dx * dx + dy * dy) * inv_w2);
        }
    }
    return out;
}

RealField2D annulus_mask(const GridSpec& grid, const AnnulusSpec& spec) {
    validate(spec);
    RealField2D out{grid, std::vector<double>(grid.size())};
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            out.at(i, j) = annulus_transmission(std::hypot(x, y), spec);
        }
    }
    return out;
}

RealField2D slit_mask(const GridSpec& grid, const SlitSpec& spec) {
    validate(spec);
    RealField2D out{grid, std::vector<double>(grid.size())};
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double c = spec.orientation == Orientation::Vertical ? grid.x(i) : y;
            out.at(i, j) = slit_transmission(c, spec);
        }
    }
    return out;
}

ComplexField2D apply_mask(const ComplexField2D& field, const RealField2D& mask) {
    if (!field.grid.same_shape(mask.grid)) throw std::invalid_argument("mask grid mismatch");
    ComplexField2D out = field;
    for (std::size_t n = 0; n < out.samples.size(); ++n) out.samples[n] *= mask.samples[n];
    return out;
}

}  // namespace fwmix
