#include "critstrip/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "critstrip/quad.hpp"

namespace critstrip {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// B_{2k} / (2k)!  via  2 (-1)^{k+1} zeta(2k) / (2 pi)^{2k}.
const std::vector<double>& bern_over_fact() {
    static const std::vector<double> tab = [] {
        std::vector<double> v(41, 0.0);
        for (int k = 1; k <= 40; ++k) {
            const double m = 2.0 * k;
            const double N = 1000.0;
            double z2k = 0.0;
            for (int n = 1; n < 1000; ++n) z2k += std::pow(double(n), -m);
            // Euler-Maclaurin tail keeps the coefficient accurate to ~1e-18
            z2k += std::pow(N, 1.0 - m) / (m - 1.0) + 0.5 * std::pow(N, -m) +
                   m * std::pow(N, -m - 1.0) / 12.0;
            v[k] = 2.0 * ((k % 2) ? 1.0 : -1.0) * z2k / std::pow(2.0 * kPi, 2.0 * k);
        }
        return v;
    }();
    return tab;
}

// Plain Bernoulli numbers B_2..B_20 for the Stirling series.
constexpr double kBernoulli[] = {
    1.0 / 6.0,       -1.0 / 30.0,       1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,   7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0,
};

cplx zeta_em(cplx s, int n_cut, int order, double target, bool& ok, double& achieved) {
    cplx sum = 0.0;
    for (int n = 1; n < n_cut; ++n) sum += std::exp(-s * std::log(double(n)));
    const double logN = std::log(double(n_cut));
    const cplx n_pow = std::exp(-s * logN);  // N^{-s}
    sum += n_pow * double(n_cut) / (s - 1.0) + 0.5 * n_pow;

    const auto& bf = bern_over_fact();
    cplx poch = s;                    // (s)_{2k-1} for k = 1
    cplx npow = n_pow / double(n_cut);  // N^{-s-2k+1} for k = 1
    double prev = 1e300;
    ok = false;
    achieved = prev;
    for (int k = 1; k <= order; ++k) {
        const cplx term = bf[k] * poch * npow;
        sum += term;
        const double mag = std::abs(term);
        achieved = mag;
        if (mag < target) {
            ok = true;
            break;
        }
        if (mag > prev) break;  // asymptotic series turned; N too small
        prev = mag;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        npow /= double(n_cut) * double(n_cut);
    }
    return sum;
}

}  // namespace

void require_finite(cplx s, const char* where) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        std::ostringstream os;
        os << where << ": non-finite complex point";
        throw DomainError(os.str());
    }
}

void EvalOptions::validate() const {
    if (target_abs_error < 1e-14) throw DomainError("EvalOptions: target_abs_error < 1e-14");
    if (max_terms < 16) throw DomainError("EvalOptions: max_terms < 16");
    if (em_order < 1) throw DomainError("EvalOptions: em_order < 1");
}

cplx eval_zeta(cplx s, const EvalOptions& opts) {
    require_finite(s, "eval_zeta");
    opts.validate();
    if (s == cplx(1.0, 0.0)) throw PoleError("eval_zeta: simple pole at s = 1");

    if (s.imag() < 0.0) return std::conj(eval_zeta(std::conj(s), opts));

    const double t = s.imag();
    int n_cut = std::max(16, int(std::ceil(0.6 * t)) + 12);
    while (true) {
        if (n_cut > opts.max_terms)
            throw AccuracyError("eval_zeta: max_terms exhausted before reaching target accuracy");
        bool ok = false;
        double achieved = 0.0;
        const cplx val = zeta_em(s, n_cut, opts.em_order, 0.1 * opts.target_abs_error, ok, achieved);
        if (ok) return val;
        n_cut *= 2;
    }
}

cplx eval_log_gamma(cplx z) {
    require_finite(z, "eval_log_gamma");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("eval_log_gamma: pole at nonpositive integer");

    cplx shift = 0.0;
    while (z.real() < 12.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    const cplx zi = 1.0 / z, zi2 = zi * zi;
    cplx series = 0.0;
    cplx p = zi;
    for (int k = 1; k <= 10; ++k) {
        series += kBernoulli[k - 1] / double(2 * k * (2 * k - 1)) * p;
        p *= zi2;
    }
    return shift + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

double theta_sum(double x) {
    if (!(x > 0.0)) throw DomainError("theta_sum: requires x > 0");
    double sum = 0.0;
    for (int n = 1; n <= 100000; ++n) {
        const double term = std::exp(-kPi * double(n) * double(n) * x);
        sum += term;
        // Tail is dominated by a geometric series with ratio exp(-pi(2n+1)x).
        const double ratio = std::exp(-kPi * (2.0 * n + 1.0) * x);
        if (term * ratio / std::max(1.0 - ratio, 0.5) < 1e-18 * std::max(sum, 1e-300)) break;
    }
    return sum;
}

CompletedZeta completed_zeta(cplx s) {
    require_finite(s, "completed_zeta");
    if (s == cplx(0.0, 0.0) || s == cplx(1.0, 0.0))
        throw PoleError("completed_zeta: poles at s = 0 and s = 1");

    CompletedZeta out;
    out.via_factors =
        std::exp(-0.5 * s * std::log(kPi) + eval_log_gamma(0.5 * s)) * eval_zeta(s);

    // Integrand decays like exp(-pi x); x = 14 puts the tail below 1e-17.
    const double x_max = 14.0;
    auto integrand = [&](double x) -> cplx {
        const double th = theta_sum(x);
        const double lx = std::log(x);
        return (std::exp((0.5 * s - 1.0) * lx) + std::exp(-(0.5 * (s + 1.0)) * lx)) * th;
    };
    out.via_integral = 1.0 / (s * (s - 1.0)) + adaptive_simpson(integrand, 1.0, x_max, 1e-13);
    return out;
}

double functional_equation_residual(cplx s, const EvalOptions& opts) {
    if (s == cplx(0.0, 0.0) || s == cplx(1.0, 0.0))
        throw PoleError("functional_equation_residual: poles at s = 0 and s = 1");
    const cplx lhs =
        std::exp(-0.5 * s * std::log(kPi) + eval_log_gamma(0.5 * s)) * eval_zeta(s, opts);
    const cplx rhs = std::exp(-0.5 * (1.0 - s) * std::log(kPi) +
                              eval_log_gamma(0.5 * (1.0 - s))) *
                     eval_zeta(1.0 - s, opts);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double ExclusionSet::clearance(cplx s) const {
    double d = std::abs(s - cplx(1.0, 0.0));  // the pole is always excluded
    for (const cplx& p : points) d = std::min(d, std::abs(s - p));
    return d;
}

BranchPath BranchPath::vertical_to(cplx target, const ExclusionSet& excl) {
    BranchPath p;
    p.anchor = cplx(2.0, target.imag());
    p.waypoints = {target};
    p.exclusions = excl;
    return p;
}

cplx log_zeta_tracked(const BranchPath& path, const EvalOptions& opts) {
    if (path.anchor.real() < 1.5)
        throw BranchError("log_zeta_tracked: anchor must satisfy Re >= 1.5");
    if (path.step_cap <= 0.0 || path.step_cap > 0.5 * kPi + 1e-12)
        throw BranchError("log_zeta_tracked: step_cap must lie in (0, pi/2]");

    auto check_margin = [&](cplx z) {
        if (path.exclusions.clearance(z) < path.exclusions.margin)
            throw BranchError("log_zeta_tracked: path violates exclusion margin");
    };

    check_margin(path.anchor);
    cplx prev = path.anchor;
    cplx prev_val = eval_zeta(prev, opts);
    cplx w = std::log(prev_val);  // principal; |arg zeta| < pi/2 for Re >= 1.5

    for (cplx target : path.waypoints) {
        check_margin(target);
        while (std::abs(target - prev) > 1e-15) {
            cplx step_to = target;
            // Halve the step until the phase increment is under the cap.
            for (int halvings = 0;; ++halvings) {
                check_margin(step_to);
                const cplx val = eval_zeta(step_to, opts);
                const cplx ratio_log = std::log(val / prev_val);
                if (std::abs(ratio_log.imag()) <= path.step_cap) {
                    w += ratio_log;
                    prev = step_to;
                    prev_val = val;
                    break;
                }
                if (halvings >= 48 || std::abs(step_to - prev) < 1e-13)
                    throw BranchError("log_zeta_tracked: phase step exceeds cap at minimal step");
                step_to = prev + 0.5 * (step_to - prev);
            }
        }
    }
    return w;
}

cplx F_factor(cplx s, double strip_eps) {
    require_finite(s, "F_factor");
    if (!(s.real() > strip_eps && s.real() < 1.0 - strip_eps))
        throw DomainError("F_factor: s outside the open strip");
    const double lp = std::log(kPi);
    return 0.5 * s * lp - eval_log_gamma(0.5 * s) - 0.5 * (1.0 - s) * lp +
           eval_log_gamma(0.5 * (1.0 - s));
}

SupScan F_sup_scan(double re_lo, double re_hi, double im_lo, double im_hi,
                   int n_re, int n_im) {
    SupScan out;
    const double h = 1e-5;
    for (int sign = 0; sign < 2; ++sign) {
        for (int i = 0; i < n_re; ++i) {
            const double re = re_lo + (re_hi - re_lo) * i / double(n_re - 1);
            for (int j = 0; j < n_im; ++j) {
                double im = im_lo + (im_hi - im_lo) * j / double(n_im - 1);
                if (sign) im = -im;
                const cplx s(re, im);
                out.sup_abs = std::max(out.sup_abs, std::abs(F_factor(s)));
                if (re - h > 0.0 && re + h < 1.0) {
                    const cplx d = (F_factor(s + h) - F_factor(s - h)) / (2.0 * h);
                    out.sup_dtau = std::max(out.sup_dtau, std::abs(d));
                }
            }
        }
    }
    return out;
}

}  // namespace critstrip
