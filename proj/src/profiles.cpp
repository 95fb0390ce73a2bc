#include "fwmix/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fwmix/bessel.hpp"

namespace fwmix {

namespace {

// 2*J1(u)/u, even, exactly 1 at u = 0.
double j1_ratio(double u) {
    const double au = std::abs(u);
    if (au < 1e-8) return 1.0 - u * u / 8.0;
    return 2.0 * bessel_j1(au) / au;
}

// d/du of the above, odd. The two Bessel terms cancel to O(u) near zero,
// so a short series takes over below 1e-3.
double j1_ratio_deriv(double u) {
    const double au = std::abs(u);
    if (au < 1e-3) return -u / 4.0 + u * u * u / 48.0;
    const double d = 2.0 * bessel_j0(au) / au - 4.0 * bessel_j1(au) / (au * au);
    return u < 0.0 ? -d : d;
}

// Unit-peak shape, even in both arguments; no domain checks so the
// unconstrained optimizer can wander through negative eps.
double airy_shape(double v, double eps) {
    const double e2 = eps * eps;
    const double q = (j1_ratio(v) - e2 * j1_ratio(eps * v)) / (1.0 - e2);
    return q * q;
}

struct FitData {
    const std::vector<double>& xs;
    const std::vector<double>& ys;
    bool with_offset;
    int npar() const { return with_offset ? 5 : 4; }
};

// p = [eps, i0, scale, center (, offset)]
double residuals(const FitData& d, const double* p, std::vector<double>& r) {
    const double off = d.with_offset ? p[4] : 0.0;
    double cost = 0.0;
    for (std::size_t n = 0; n < d.xs.size(); ++n) {
        const double v = (d.xs[n] - p[3]) / p[2];
        r[n] = p[1] * airy_shape(v, p[0]) + off - d.ys[n];
        cost += r[n] * r[n];
    }
    return cost;
}

void jacobian(const FitData& d, const double* p, std::vector<double>& J) {
    const double eps = p[0], i0 = p[1], s = p[2], c = p[3];
    const double e2 = eps * eps;
    const double D = 1.0 - e2;
    const int np = d.npar();
    for (std::size_t n = 0; n < d.xs.size(); ++n) {
        const double v = (d.xs[n] - c) / s;
        const double t1 = j1_ratio(v);
        const double t2 = j1_ratio(eps * v);
        const double B = t1 - e2 * t2;
        const double q = B / D;
        const double dB_de = -2.0 * eps * t2 - e2 * v * j1_ratio_deriv(eps * v);
        const double dB_dv = j1_ratio_deriv(v) - e2 * eps * j1_ratio_deriv(eps * v);
        const double dS_dv = 2.0 * q * dB_dv / D;
        double* row = &J[n * np];
        row[0] = i0 * (2.0 * q / D) * (dB_de + 2.0 * eps * q);
        row[1] = q * q;
        row[2] = i0 * dS_dv * (-v / s);
        row[3] = i0 * dS_dv * (-1.0 / s);
        if (d.with_offset) row[4] = 1.0;
    }
}

// Gaussian elimination with partial pivoting on an n x n system, n <= 5.
bool solve_small(int n, double* A, double* b) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(A[row * n + col]) > std::abs(A[piv * n + col])) piv = row;
        if (std::abs(A[piv * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int kk = 0; kk < n; ++kk) std::swap(A[col * n + kk], A[piv * n + kk]);
            std::swap(b[col], b[piv]);
        }
        for (int row = col + 1; row < n; ++row) {
            const double f = A[row * n + col] / A[col * n + col];
            for (int kk = col; kk < n; ++kk) A[row * n + kk] -= f * A[col * n + kk];
            b[row] -= f * b[col];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double acc = b[row];
        for (int kk = row + 1; kk < n; ++kk) acc -= A[row * n + kk] * b[kk];
        b[row] = acc / A[row * n + row];
    }
    return true;
}

struct LmResult {
    double p[5];
    double cost;
    int iterations;
    bool converged;
};

LmResult lm_fit(const FitData& d, const double* p0) {
    const int np = d.npar();
    const std::size_t ns = d.xs.size();
    LmResult out{};
    double p[5];
    std::copy(p0, p0 + np, p);
    double damping = 1e-3;

    std::vector<double> r(ns), rn(ns), J(ns * np);
    double cost = residuals(d, p, r);
    bool done = false;
    int iter = 0;
    for (; iter < 200 && !done; ++iter) {
        jacobian(d, p, J);
        double H[25] = {}, g[5] = {};
        for (std::size_t n = 0; n < ns; ++n) {
            const double* row = &J[n * np];
            for (int a = 0; a < np; ++a) {
                g[a] += row[a] * r[n];
                for (int b = a; b < np; ++b) H[a * np + b] += row[a] * row[b];
            }
        }
        for (int a = 0; a < np; ++a)
            for (int b = 0; b < a; ++b) H[a * np + b] = H[b * np + a];

        for (int attempt = 0; attempt < 40; ++attempt) {
            double Hd[25], delta[5];
            std::copy(H, H + np * np, Hd);
            for (int a = 0; a < np; ++a) {
                Hd[a * np + a] += damping * H[a * np + a];
                delta[a] = -g[a];
            }
            if (!solve_small(np, Hd, delta)) {
                damping *= 3.0;
                continue;
            }
            double pn[5];
            double step2 = 0.0, p2 = 0.0;
            for (int a = 0; a < np; ++a) {
                pn[a] = p[a] + delta[a];
                step2 += delta[a] * delta[a];
                p2 += pn[a] * pn[a];
            }
            const double cn = residuals(d, pn, rn);
            if (std::isfinite(cn) && cn < cost) {
                const double gained = cost - cn;
                std::copy(pn, pn + np, p);
                std::swap(r, rn);
                cost = cn;
                damping = std::max(damping * 0.3, 1e-14);
                if (gained < 1e-14 * std::max(cost, 1e-300) ||
                    std::sqrt(step2) < 1e-12 * (1.0 + std::sqrt(p2))) {
                    done = true;
                    out.converged = true;
                }
                break;
            }
            damping *= 3.0;
            if (damping > 1e14) {
                done = true;
                break;
            }
        }
    }
    std::copy(p, p + np, out.p);
    if (np == 4) out.p[4] = 0.0;
    out.cost = cost;
    out.iterations = iter;
    return out;
}

struct Initial {
    double i0, scale, center;
};

Initial heuristic_init(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = ys.size();
    std::vector<double> sm(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int off = -2; off <= 2; ++off) {
            const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off;
            if (j >= 0 && j < static_cast<std::ptrdiff_t>(n)) acc += ys[j];
        }
        sm[i] = acc / 5.0;
    }
    const std::size_t idx = std::max_element(sm.begin(), sm.end()) - sm.begin();
    const double peak = sm[idx];
    const double c0 = xs[idx];
    const double i00 = *std::max_element(ys.begin(), ys.end());

    // scale from the first post-peak local minimum that has dropped well
    // below the peak, read as the first zero of the half-obscured shape
    constexpr double kFirstZeroHalf = 3.1444390968979814;
    double s0 = -1.0;
    for (std::size_t i = idx + 2; i + 1 < n; ++i) {
        if (sm[i] < 0.3 * peak && sm[i] <= sm[i - 1] && sm[i] <= sm[i + 1]) {
            s0 = (xs[i] - c0) / kFirstZeroHalf;
            break;
        }
    }
    if (s0 <= 0.0) s0 = (xs.back() - c0) / 5.0;
    return {i00, s0, c0};
}

constexpr double kStartRatios[] = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85};

}  // namespace

double annular_airy_intensity(double v, double eps_ratio, double i0) {
    if (!(eps_ratio >= 0.0 && eps_ratio < 1.0))
        throw std::invalid_argument("obscuration ratio must lie in [0, 1)");
    return i0 * airy_shape(v, eps_ratio);
}

RadialProfile extract_slice(const RealField2D& image, Orientation orientation, int cx, int cy,
                            int width) {
    if (width < 1) throw std::invalid_argument("slice width must be at least 1");
    const GridSpec& g = image.grid;
    const int band_lo = (orientation == Orientation::Horizontal ? cy : cx) - (width - 1) / 2;
    const int band_hi = (orientation == Orientation::Horizontal ? cy : cx) + width / 2;
    const int band_limit = orientation == Orientation::Horizontal ? g.ny : g.nx;
    if (band_lo < 0 || band_hi >= band_limit)
        throw std::out_of_range("slice band extends outside the image");

    RadialProfile out;
    out.unit = ProfileUnit::Micrometers;
    if (orientation == Orientation::Horizontal) {
        out.positions.resize(g.nx);
        out.intensities.assign(g.nx, 0.0);
        for (int j = band_lo; j <= band_hi; ++j)
            for (int i = 0; i < g.nx; ++i)
                out.intensities[i] += image.samples[static_cast<std::size_t>(j) * g.nx + i];
        for (int i = 0; i < g.nx; ++i) {
            out.intensities[i] /= width;
            out.positions[i] = g.x(i);
        }
    } else {
        out.positions.resize(g.ny);
        out.intensities.assign(g.ny, 0.0);
        for (int j = 0; j < g.ny; ++j) {
            double acc = 0.0;
            for (int i = band_lo; i <= band_hi; ++i)
                acc += image.samples[static_cast<std::size_t>(j) * g.nx + i];
            out.intensities[j] = acc / width;
            out.positions[j] = g.y(j);
        }
    }
    return out;
}

AiryFit fit_airy(const RadialProfile& profile, const FitOptions& opts) {
    const std::vector<double>& xs = profile.positions;
    const std::vector<double>& ys = profile.intensities;
    if (xs.size() != ys.size()) throw std::invalid_argument("profile arrays differ in length");
    if (xs.size() < 20) throw std::invalid_argument("profile too short to fit (need 20 samples)");
    const auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
    if (*lo_it == *hi_it) throw std::invalid_argument("profile is constant");

    const Initial init = heuristic_init(xs, ys);
    const FitData data{xs, ys, opts.with_offset};

    std::vector<double> starts;
    if (opts.eps0)
        starts.push_back(*opts.eps0);
    else
        starts.assign(std::begin(kStartRatios), std::end(kStartRatios));

    bool have_best = false;
    LmResult best{};
    for (double e0 : starts) {
        const double p0[5] = {e0, init.i0, init.scale, init.center, 0.0};
        LmResult run = lm_fit(data, p0);
        bool finite = std::isfinite(run.cost);
        for (int a = 0; a < data.npar(); ++a) finite = finite && std::isfinite(run.p[a]);
        if (!finite || std::abs(run.p[0]) >= 0.995 || run.p[2] <= 0.0) continue;
        if (!have_best || run.cost < best.cost) {
            best = run;
            have_best = true;
        }
    }
    if (!have_best) throw std::runtime_error("no admissible fit from any starting ratio");

    AiryFit fit;
    fit.eps_ratio = std::abs(best.p[0]);
    fit.i0 = best.p[1];
    fit.scale = best.p[2];
    fit.center = best.p[3];
    fit.offset = best.p[4];
    fit.residual = best.cost;
    fit.iterations = best.iterations;
    fit.converged = best.converged;
    return fit;
}

ProfileComparison compare_profiles(const RadialProfile& a, const RadialProfile& b,
                                   double scale_a, double scale_b) {
    if (a.positions.size() != a.intensities.size() || b.positions.size() != b.intensities.size())
        throw std::invalid_argument("profile arrays differ in length");
    if (a.positions.empty() || b.positions.size() < 2)
        throw std::invalid_argument("profiles too short to compare");
    if (!(scale_a > 0.0) || !(scale_b > 0.0))
        throw std::invalid_argument("position scales must be positive");

    ProfileComparison cmp;
    cmp.unit_mismatch = a.unit != b.unit && scale_a == 1.0 && scale_b == 1.0;

    const double peak_a = *std::max_element(a.intensities.begin(), a.intensities.end());
    const double peak_b = *std::max_element(b.intensities.begin(), b.intensities.end());
    if (!(peak_a > 0.0) || !(peak_b > 0.0))
        throw std::invalid_argument("profile has no positive peak");

    const double lo = std::max(a.positions.front() * scale_a, b.positions.front() * scale_b);
    const double hi = std::min(a.positions.back() * scale_a, b.positions.back() * scale_b);
    if (lo > hi) throw std::invalid_argument("profile ranges do not overlap");

    double sum_d2 = 0.0, sum_b2 = 0.0;
    std::size_t used = 0;
    std::size_t seg = 0;
    for (std::size_t i = 0; i < a.positions.size(); ++i) {
        const double x = a.positions[i] * scale_a;
        if (x < lo || x > hi) continue;
        while (seg + 2 < b.positions.size() && b.positions[seg + 1] * scale_b < x) ++seg;
        const double x0 = b.positions[seg] * scale_b;
        const double x1 = b.positions[seg + 1] * scale_b;
        const double t = (x - x0) / (x1 - x0);
        const double vb = b.intensities[seg] + t * (b.intensities[seg + 1] - b.intensities[seg]);
        const double da = a.intensities[i] / peak_a - vb / peak_b;
        sum_d2 += da * da;
        sum_b2 += (vb / peak_b) * (vb / peak_b);
        ++used;
    }
    if (used == 0 || !(sum_b2 > 0.0))
        throw std::invalid_argument("profiles share no usable samples");
    cmp.nrmse = std::sqrt(sum_d2 / sum_b2);

    const std::size_t ia = std::max_element(a.intensities.begin(), a.intensities.end()) -
                           a.intensities.begin();
    const std::size_t ib = std::max_element(b.intensities.begin(), b.intensities.end()) -
                           b.intensities.begin();
    cmp.peak_offset = std::abs(a.positions[ia] * scale_a - b.positions[ib] * scale_b);
    return cmp;
}

}  // namespace fwmix
