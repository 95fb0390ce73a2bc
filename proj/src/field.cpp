#include "fwmix/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fwmix {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec make_grid(int nx, int ny, double pitch_um, Plane plane) {
    if (!power_of_two(nx) || nx < 8 || !power_of_two(ny) || ny < 8) {
        throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    }
    if (!(pitch_um > 0.0)) {
        throw std::invalid_argument("grid pitch must be positive");
    }
    return GridSpec{nx, ny, pitch_um, pitch_um, plane};
}

ComplexField2D make_field(const GridSpec& grid) {
    return ComplexField2D{grid, std::vector<cplx>(grid.size())};
}

double total_power(const ComplexField2D& field) {
    double acc = 0.0;
    for (const cplx& u : field.samples) acc += std::norm(u);
    return acc * field.grid.pitch_x * field.grid.pitch_y;
}

double total_power(const RealField2D& intensity_image) {
    double acc = 0.0;
    for (double v : intensity_image.samples) acc += v;
    return acc * intensity_image.grid.pitch_x * intensity_image.grid.pitch_y;
}

RealField2D intensity(const ComplexField2D& field) {
    RealField2D out{field.grid, std::vector<double>(field.grid.size())};
    for (std::size_t n = 0; n < field.samples.size(); ++n) out.samples[n] = std::norm(field.samples[n]);
    return out;
}

double OpticalConfig::k() const { return 2.0 * std::numbers::pi / lambda_um; }

void validate(const OpticalConfig& cfg) {
    if (!(cfg.lambda_um > 0.0)) throw std::invalid_argument("wavelength must be positive");
    if (!(cfg.z_um > 0.0)) throw std::invalid_argument("propagation distance must be positive");
    if (!(cfg.f_um > 0.0)) throw std::invalid_argument("focal length must be positive");
}

}  // namespace fwmix
