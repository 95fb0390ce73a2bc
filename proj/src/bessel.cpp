#include "fwmix/bessel.hpp"

#include <cmath>
#include <numbers>

namespace fwmix {

namespace {

// Chebyshev tables fit against 50-digit reference values.
// Small range: J0(sqrt(w)) and J1(sqrt(w))/sqrt(w) on w in [0, 25].
// Large range: modulus/phase functions P, Q on s = (5/x)^2 in [0, 1], with
//   J_n(x) = sqrt(2/(pi x)) [P_n(s) cos(chi) - (Q_n(s)/x) sin(chi)],
//   chi = x - (2n+1) pi/4.

constexpr double kJ0Small[25] = {
    2.34098982532454690e-03,  -4.94205093409524288e-01, 3.97937367232075623e-01,
    -9.38314587965938529e-02, 1.08875316486808614e-02,  -7.60626765773233160e-04,
    3.56948364636379723e-05,  -1.20606970603949184e-06, 3.07903858503012769e-08,
    -6.15440574950598886e-10, 9.89891250273703089e-12,  -1.30929532068497978e-13,
    1.42849813554985299e-15,  7.24916487122526058e-17,  1.24603848039715893e-16,
    3.36629160771727845e-17,  -4.90508703096568165e-17, 6.79974046179165955e-18,
    1.35208278077153413e-16,  2.86479756158767021e-17,  1.09237502462020077e-16,
    -1.16187200693321401e-16, 5.99336072313254742e-17,  8.41572901929319612e-18,
    -4.20993354241529124e-17};

constexpr double kJ1Small[25] = {
    1.24721768265043401e-01,  -2.68684568479919450e-01, 9.12979066390389449e-02,
    -1.40046534513910310e-02, 1.21970619430886921e-03,  -6.86129410792352774e-05,
    2.70336907160577802e-06,  -7.88550692208070757e-08, 1.77292982697839532e-09,
    -3.16818429961557152e-11, 4.60997967631364130e-13,  -5.54569927820845774e-15,
    3.08016735887940277e-17,  4.67160454713007028e-17,  3.22435199021822975e-17,
    3.31366182241963988e-18,  -2.09098622997518044e-17, 2.64069098902707629e-17,
    8.80382492301834457e-17,  2.30932480678511230e-17,  3.01413368072772661e-17,
    -2.74800046426299901e-17, -1.08036976723247151e-17, 2.68492675952570164e-17,
    4.32796033267071558e-17};

constexpr double kP0[21] = {
    9.98652339877695971e-01,  -1.32937162125021640e-03, 1.76130555129666318e-05,
    -6.31936711809641114e-07, 3.94882559336592396e-08,  -3.54096783336411840e-09,
    4.10324697259636228e-10,  -5.76574168324859283e-11, 9.42316419403797538e-12,
    -1.74007600067349355e-12, 3.55637925972088480e-13,  -7.90846669516421842e-14,
    1.90182734373702997e-14,  -4.77967708151892892e-15, 1.36750540420901829e-15,
    -3.11735701903894888e-16, 1.70199879708436523e-16,  2.69039714660580812e-17,
    7.62329555707794266e-17,  5.85977417115793954e-17,  6.17520851455737038e-17};

constexpr double kQ0[21] = {
    -1.23647025821675000e-01, 1.31901940499225354e-03,  -3.21879912126678006e-05,
    1.62370932055824463e-06,  -1.27432897426808544e-07, 1.35130327567589801e-08,
    -1.78507591214334758e-09, 2.79085706714617105e-10,  -4.98890868338496374e-11,
    9.95070722186130571e-12,  -2.17512713061852152e-12, 5.14005487127981041e-13,
    -1.29939643412775717e-13, 3.48308599947640002e-14,  -9.84689018542986857e-15,
    2.90433102492948039e-15,  -9.05159015493719720e-16, 2.81417414014696476e-16,
    -1.01078605404795234e-16, 2.62183282521236250e-17,  -1.83927082882024076e-17};

constexpr double kP1[21] = {
    1.00226762068534048e+00,  2.24373529580805401e-03,  -2.30710188624984229e-05,
    7.63918173300889361e-07,  -4.58968522720711084e-08, 4.02051552931032310e-09,
    -4.58677351116271443e-10, 6.37316340789257053e-11,  -1.03273006357972222e-11,
    1.89437851906853320e-12,  -3.84927348007772998e-13, 8.53468839027228384e-14,
    -2.03052770823711003e-14, 5.23246775244464604e-15,  -1.34727969540319147e-15,
    4.51742328356833298e-16,  -6.68979075118491784e-17, 8.37817806620022011e-17,
    4.35986467764260052e-17,  5.84892773449657794e-17,  4.53265105311484488e-17};

constexpr double kQ1[21] = {
    3.73087346214686477e-01,  -1.87051896810513560e-03, 4.00569945204728620e-05,
    -1.91440283907361867e-06, 1.45881651085907577e-07,  -1.51833986318559818e-08,
    1.97992227348966066e-09,  -3.06598133777042954e-10, 5.44023472611398775e-11,
    -1.07866409344270005e-11, 2.34636485224252429e-12,  -5.52193865618095488e-13,
    1.39110177167579994e-13,  -3.71717482016598345e-14, 1.04863979089581922e-14,
    -3.07837105639888603e-15, 9.65688933495545139e-16,  -2.91100738263384595e-16,
    1.13287587828561359e-16,  -2.10577424014874601e-17, 2.42803590655883753e-17};

// Clenshaw recurrence; t in [-1, 1].
template <int N>
double cheb(const double (&c)[N], double t) {
    double b1 = 0.0, b2 = 0.0;
    const double t2 = 2.0 * t;
    for (int k = N - 1; k >= 1; --k) {
        const double b0 = c[k] + t2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + t * b1 - b2;
}

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

}  // namespace

double bessel_j0(double x) {
    const double ax = std::fabs(x);
    if (ax < 5.0) {
        return cheb(kJ0Small, ax * ax * (2.0 / 25.0) - 1.0);
    }
    const double s = 25.0 / (ax * ax);
    const double chi = ax - kQuarterPi;
    const double p = cheb(kP0, 2.0 * s - 1.0);
    const double q = cheb(kQ0, 2.0 * s - 1.0) / ax;
    return std::sqrt(kTwoOverPi / ax) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j1(double x) {
    const double ax = std::fabs(x);
    double r;
    if (ax < 5.0) {
        r = ax * cheb(kJ1Small, ax * ax * (2.0 / 25.0) - 1.0);
    } else {
        const double s = 25.0 / (ax * ax);
        const double chi = ax - 3.0 * kQuarterPi;
        const double p = cheb(kP1, 2.0 * s - 1.0);
        const double q = cheb(kQ1, 2.0 * s - 1.0) / ax;
        r = std::sqrt(kTwoOverPi / ax) * (p * std::cos(chi) - q * std::sin(chi));
    }
    return x < 0.0 ? -r : r;
}

std::complex<double> sinhc(std::complex<double> z) {
    if (std::abs(z) < 1e-6) {
        const std::complex<double> z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

}  // namespace fwmix
