#include "critstrip/mollifier.hpp"

#include <algorithm>
#include <cmath>

#include "critstrip/quad.hpp"

namespace critstrip {

namespace {

double bump_raw(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 / (u * u - 1.0));
}

// Composite rule with panels refined toward the flat-but-stiff endpoints,
// where a single Gauss-Legendre panel loses a few digits.
double bump_integral(double a, double b, int npts) {
    static constexpr double cuts[] = {-1.0, -0.97, -0.9, -0.75, -0.5, 0.0,
                                      0.5,  0.75,  0.9,  0.97,  1.0};
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
        const double lo = std::max(a, cuts[i]), hi = std::min(b, cuts[i + 1]);
        if (lo < hi)
            acc += gl_integrate([](double u) { return bump_raw(u); }, lo, hi, npts);
    }
    return acc;
}

double bump_norm() {
    static const double sigma = 1.0 / bump_integral(-1.0, 1.0, 64);
    return sigma;
}

// Cumulative integral of psi from -1 to x, clipped to [0,1].
double bump_cdf(double x, int npts = 64) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return bump_norm() * bump_integral(-1.0, x, npts);
}

}  // namespace

double nu(double t, const MollifierParams& p) {
    p.validate();
    const double e = p.epsilon;
    const bool lower = (t >= e && t <= 0.5 - 2.0 * e);
    const bool upper = (t >= 0.5 + 2.0 * e && t <= 1.0 - e);
    return (lower || upper) ? 1.0 : 0.0;
}

double psi(double u) { return bump_norm() * bump_raw(u); }

double psi_scaled(double u, double eps) {
    if (eps <= 0.0) throw DomainError("psi_scaled: eps must be positive");
    return psi(u / eps) / eps;
}

double mu(double t, const MollifierParams& p) {
    p.validate();
    const double e = p.epsilon;
    // nu is the indicator of [e, 1/2-2e] u [1/2+2e, 1-e]; convolving with
    // psi_e turns each edge a into the smooth step bump_cdf((t-a)/e).
    const int q = p.quad_points;
    const double lower =
        bump_cdf((t - e) / e, q) - bump_cdf((t - (0.5 - 2.0 * e)) / e, q);
    const double upper =
        bump_cdf((t - (0.5 + 2.0 * e)) / e, q) - bump_cdf((t - (1.0 - e)) / e, q);
    return lower + upper;
}

double mu_symmetry_defect(const MollifierParams& p, int n_probe) {
    p.validate();
    if (n_probe < 2) throw DomainError("mu_symmetry_defect: n_probe too small");
    double worst = 0.0;
    for (int i = 0; i <= n_probe; ++i) {
        const double t = double(i) / double(n_probe);
        worst = std::max(worst, std::abs(mu(t, p) - mu(1.0 - t, p)));
    }
    return worst;
}

}  // namespace critstrip
