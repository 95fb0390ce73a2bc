#pragma once

#include <complex>

namespace fwmix {

// Bessel functions of the first kind, full double accuracy.
// Chebyshev fits below |x| = 5, modulus/phase asymptotic form above.
// Hand-fit tables; roughly 5x faster than std::cyl_bessel_j, which matters
// because the profile fitter evaluates these hundreds of millions of times.
double bessel_j0(double x);
double bessel_j1(double x);

// sinh(z)/z with the removable singularity filled in by series.
std::complex<double> sinhc(std::complex<double> z);

}  // namespace fwmix
