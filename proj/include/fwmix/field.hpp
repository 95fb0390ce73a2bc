#pragma once

#include <complex>
#include <vector>

namespace fwmix {

using cplx = std::complex<double>;

enum class Plane { Aperture, Lens, Focal };

// Uniform centered sampling grid. The origin sits on sample (nx/2, ny/2),
// so coordinates are exactly representable multiples of the pitch.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double pitch_x = 0.0;  // um
    double pitch_y = 0.0;  // um
    Plane plane = Plane::Aperture;

    double x(int i) const { return (i - nx / 2) * pitch_x; }
    double y(int j) const { return (j - ny / 2) * pitch_y; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

    bool same_shape(const GridSpec& o) const { return nx == o.nx && ny == o.ny; }
};

// Throws std::invalid_argument unless nx, ny are powers of two >= 8 and pitch > 0.
GridSpec make_grid(int nx, int ny, double pitch_um, Plane plane);

// Sampled complex scalar field. Row-major, index j*nx + i (i along x).
struct ComplexField2D {
    GridSpec grid;
    std::vector<cplx> samples;

    cplx& at(int i, int j) { return samples[static_cast<std::size_t>(j) * grid.nx + i]; }
    const cplx& at(int i, int j) const { return samples[static_cast<std::size_t>(j) * grid.nx + i]; }
};

struct RealField2D {
    GridSpec grid;
    std::vector<double> samples;

    double& at(int i, int j) { return samples[static_cast<std::size_t>(j) * grid.nx + i]; }
    const double& at(int i, int j) const { return samples[static_cast<std::size_t>(j) * grid.nx + i]; }
};

ComplexField2D make_field(const GridSpec& grid);

// Sum of |u|^2 * pitch_x * pitch_y over all samples.
double total_power(const ComplexField2D& field);
double total_power(const RealField2D& intensity_image);

RealField2D intensity(const ComplexField2D& field);

struct OpticalConfig {
    double lambda_um = 0.795;  // Rb D1
    double z_um = 3.0e5;       // aperture to lens plane
    double f_um = 2.0e5;       // lens focal length

    double k() const;  // 2*pi/lambda, rad/um
};

// Throws std::invalid_argument on non-positive lambda/z/f.
void validate(const OpticalConfig& cfg);

}  // namespace fwmix
