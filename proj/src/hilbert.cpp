#include "critstrip/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "critstrip/quad.hpp"

namespace critstrip {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI(0.0, 1.0);
}  // namespace

cplx R_eval(cplx k, const RKernel& ker) {
    ker.validate();
    require_finite(k, "R_eval");
    const cplx den = k - kI * ker.a;
    if (std::abs(den) < 1e-14) throw PoleError("R_eval: pole at k = ia");
    return std::exp(-kI * k) / den + 1.0;
}

cplx R_deriv(cplx k, const RKernel& ker) {
    ker.validate();
    const cplx den = k - kI * ker.a;
    if (std::abs(den) < 1e-14) throw PoleError("R_deriv: pole at k = ia");
    const cplx e = std::exp(-kI * k);
    return -kI * e / den - e / (den * den);
}

int line_winding(const std::function<cplx(double)>& f, double k_max, int n_samples) {
    if (n_samples < 64) throw DomainError("line_winding: too few samples");
    double accum = 0.0;
    double t_prev = -k_max;
    cplx f_prev = f(t_prev);
    const cplx f_first = f_prev;
    for (int j = 1; j <= n_samples; ++j) {
        const double t = -k_max + 2.0 * k_max * double(j) / double(n_samples);
        cplx f_cur = f(t);
        // refine any segment whose phase step is ambiguous
        double lo = t_prev, hi = t;
        cplx f_lo = f_prev;
        std::vector<std::pair<double, cplx>> stack{{hi, f_cur}};
        int depth = 0;
        while (!stack.empty()) {
            auto [th, fh] = stack.back();
            const double dphi = std::arg(fh / f_lo);
            if (std::abs(dphi) > 0.5 * kPi) {
                if (++depth > 40)
                    throw AmbiguousWindingError("line_winding: phase step will not refine");
                const double tm = 0.5 * (lo + th);
                stack.push_back({tm, f(tm)});
                continue;
            }
            accum += dphi;
            lo = th;
            f_lo = fh;
            stack.pop_back();
        }
        t_prev = t;
        f_prev = f_cur;
    }
    // closure through infinity: walk the phase back from f(k_max) to f(-k_max)
    accum += std::arg(f_first / f_prev);
    const long turns = std::lround(accum / (2.0 * kPi));
    if (std::abs(accum - 2.0 * kPi * double(turns)) > 0.01)
        throw AmbiguousWindingError("line_winding: phase closure ambiguous");
    return int(turns);
}

int index_R(const RKernel& ker, double k_max) {
    ker.validate();
    if (k_max < 1e3) throw DomainError("index_R: k_max must be >= 1e3");
    return line_winding([&](double t) { return R_eval(cplx(t, 0.0), ker); }, k_max);
}

void SampledLineFunction::validate() const {
    if (nodes.size() < 8 || nodes.size() != values.size())
        throw DomainError("SampledLineFunction: need >= 8 matched nodes/values");
    const double h = nodes[1] - nodes[0];
    if (h <= 0.0) throw DomainError("SampledLineFunction: nodes must increase");
    for (std::size_t j = 1; j < nodes.size(); ++j)
        if (std::abs(nodes[j] - nodes[j - 1] - h) > 1e-9 * std::abs(h))
            throw DomainError("SampledLineFunction: mesh must be uniform");
    if (decay_exponent <= 0.5)
        throw DomainError("SampledLineFunction: decay_exponent must exceed 1/2");
}

cplx SampledLineFunction::interpolate(double x) const {
    const double h = spacing();
    const auto n = nodes.size();
    long i0 = long(std::floor((x - nodes[0]) / h)) - 1;
    i0 = std::clamp(i0, 0L, long(n) - 4);
    cplx acc = 0.0;
    for (long i = i0; i < i0 + 4; ++i) {
        double w = 1.0;
        for (long j = i0; j < i0 + 4; ++j)
            if (j != i) w *= (x - nodes[std::size_t(j)]) / (nodes[std::size_t(i)] - nodes[std::size_t(j)]);
        acc += w * values[std::size_t(i)];
    }
    return acc;
}

SampledLineFunction SampledLineFunction::tabulate(const std::function<cplx(double)>& f,
                                                  double k_max, std::size_t n,
                                                  double decay_exponent) {
    if (n < 8) throw DomainError("tabulate: need n >= 8");
    SampledLineFunction out;
    out.decay_exponent = decay_exponent;
    out.nodes.resize(n);
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.nodes[j] = -k_max + 2.0 * k_max * double(j) / double(n - 1);
        out.values[j] = f(out.nodes[j]);
    }
    out.validate();
    return out;
}

namespace {

// tail of \int over |t| > B assuming |f| ~ |f(edge)| (B/|t|)^d
cplx tail_correction(const SampledLineFunction& f, cplx z) {
    const double B = f.nodes.back();
    const double d = f.decay_exponent;
    const cplx f_right = f.values.back();
    const cplx f_left = f.values.front();
    const auto& gl = gauss_legendre(32);
    cplx right = 0.0, left = 0.0;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double u = 0.5 * (gl.nodes[q] + 1.0);  // map to (0,1)
        const double w = 0.5 * gl.weights[q];
        const double ud = std::pow(u, d - 1.0);
        right += w * ud / (B - z * u);
        left += w * ud / (B + z * u);
    }
    return f_right * B * right - f_left * B * left;
}

}  // namespace

cplx cauchy_project(const SampledLineFunction& f, cplx z, Side side) {
    f.validate();
    require_finite(z, "cauchy_project");
    const double h = f.spacing();
    const auto n = f.nodes.size();
    const cplx norm = 1.0 / (2.0 * kPi * kI);

    if (std::abs(z.imag()) >= 1e-12) {
        // off the line: plain Cauchy integral, no limit needed
        cplx sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (j == 0 || j + 1 == n) ? 0.5 * h : h;
            sum += w * f.values[j] / (f.nodes[j] - z);
        }
        return norm * (sum + tail_correction(f, z));
    }

    const double x = z.real();
    if (x <= f.nodes.front() || x >= f.nodes.back())
        throw DomainError("cauchy_project: boundary point outside sampled window");
    if (h > 0.2)
        throw AccuracyError("cauchy_project: mesh too coarse near the singularity");

    const long jz = std::lround((x - f.nodes[0]) / h);
    const bool on_node = std::abs(f.nodes[std::size_t(jz)] - x) < 1e-9 * h;
    const cplx fz = on_node ? f.values[std::size_t(jz)] : f.interpolate(x);

    // principal value by singularity subtraction
    cplx sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j + 1 == n) ? 0.5 * h : h;
        if (on_node && long(j) == jz) {
            // limit of (f(t)-f(x))/(t-x): central-difference derivative
            const std::size_t ja = j > 0 ? j - 1 : j;
            const std::size_t jb = j + 1 < n ? j + 1 : j;
            sum += w * (f.values[jb] - f.values[ja]) / (f.nodes[jb] - f.nodes[ja]);
        } else {
            sum += w * (f.values[j] - fz) / (f.nodes[j] - x);
        }
    }
    sum += fz * std::log((f.nodes.back() - x) / (x - f.nodes.front()));
    sum += tail_correction(f, z);

    cplx out = norm * sum;
    if (side == Side::plus) out += 0.5 * fz;
    if (side == Side::minus) out -= 0.5 * fz;
    return out;
}

cplx Factorization::gamma_plus(double k) const {
    return double(sign) * cauchy_project(log_r, cplx(k, 0.0), Side::plus);
}

cplx Factorization::gamma_minus(double k) const {
    return double(sign) * cauchy_project(log_r, cplx(k, 0.0), Side::minus);
}

cplx Factorization::x_plus(double k) const { return std::exp(gamma_plus(k)); }

cplx Factorization::x_minus(double k) const { return std::exp(gamma_minus(k)); }

cplx Factorization::x_minus_continued(cplx z) const {
    if (z.imag() <= 0.0)
        throw DomainError("x_minus_continued: continuation defined for Im z > 0");
    const cplx c = cauchy_project(log_r, z, Side::principal);
    return R_eval(z, ker) * std::exp(double(sign) * c);
}

cplx Factorization::x_minus_deriv(cplx z) const {
    const double h = 1e-5;
    return (x_minus_continued(z + h) - x_minus_continued(z - h)) / (2.0 * h);
}

Factorization factorize(const RKernel& ker, double k_max, std::size_t n_nodes) {
    ker.validate();
    if (index_R(ker, std::max(k_max, 1e3)) != 0)
        throw BranchError("factorize: nonzero index, log of R not single-valued");

    Factorization fac;
    fac.ker = ker;
    fac.log_r.decay_exponent = 1.0;
    fac.log_r.nodes.resize(n_nodes);
    fac.log_r.values.resize(n_nodes);
    double arg_prev = 0.0;
    cplx r_prev = 1.0;
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const double t = -k_max + 2.0 * k_max * double(j) / double(n_nodes - 1);
        const cplx r = R_eval(cplx(t, 0.0), ker);
        const double darg = (j == 0) ? std::arg(r) : std::arg(r / r_prev);
        if (j > 0 && std::abs(darg) > 0.5 * kPi)
            throw BranchError("factorize: phase step exceeds pi/2 on the log R mesh");
        arg_prev += darg;
        fac.log_r.nodes[j] = t;
        fac.log_r.values[j] = cplx(std::log(std::abs(r)), arg_prev);
        r_prev = r;
    }
    fac.log_r.validate();

    // the statement and the proof disagree about a leading minus sign;
    // keep whichever convention reproduces X_minus = R on the line
    const double k_test = 5.0;
    double best_res = std::numeric_limits<double>::infinity();
    for (int s : {-1, +1}) {
        fac.sign = s;
        const double res = std::abs(fac.x_minus(k_test) - R_eval(cplx(k_test, 0.0), ker));
        if (res < best_res) {
            best_res = res;
        } else {
            fac.sign = -s;  // previous candidate was better
            break;
        }
    }
    return fac;
}

namespace {

// Reduced root equation: with t = 2 pi n + w, R(t) = 0 becomes
// g(w) = e^{-iw} + 2 pi n + w - ia = 0 (avoids large-angle rounding).
cplx root_g(cplx w, double two_pi_n, double a) {
    return std::exp(-kI * w) + two_pi_n + w - kI * a;
}

cplx newton_root_from(cplx w, double two_pi_n, double a) {
    cplx g = root_g(w, two_pi_n, a);
    for (int it = 0; it < 200; ++it) {
        const cplx gp = -kI * std::exp(-kI * w) + 1.0;
        cplx step = g / gp;
        // damp until the residual actually drops
        for (int half = 0; half < 60; ++half) {
            const cplx w_try = w - step;
            const cplx g_try = root_g(w_try, two_pi_n, a);
            if (std::abs(g_try) < std::abs(g) || half == 59) {
                w = w_try;
                g = g_try;
                break;
            }
            step *= 0.5;
        }
        if (std::abs(g) < 1e-14 * std::max(1.0, std::abs(two_pi_n))) break;
    }
    if (!(std::abs(g) < 1e-11 * std::max(1.0, std::abs(two_pi_n))))
        throw ConvergenceError("newton_root: no convergence near 2*pi*n = " +
                               std::to_string(two_pi_n));
    if (w.imag() <= 0.0)
        throw ConvergenceError("newton_root: root left the upper half-plane");
    return w;
}

cplx newton_root(int n, double a) {
    const double two_pi_n = 2.0 * kPi * double(n);
    const cplx w0 = (n > 0) ? cplx(kPi, std::log(2.0 * kPi * n + kPi))
                  : (n < 0) ? cplx(0.0, std::log(-two_pi_n))
                            : cplx(2.0, std::log(2.0 + a));
    return newton_root_from(w0, two_pi_n, a);
}

// The mirror family has one more member than its n >= 1 asymptotic suggests:
// a low-lying root with small negative real part (about -1.1 + 0.87i when
// a = 3) that sits between the two n = 0 neighborhoods.
cplx mirror_zero_root(double a) {
    return newton_root_from(cplx(-1.1, std::max(0.3, std::log(a) - 0.65)), 0.0, a);
}

}  // namespace

RootRecord solve_t_n(int n, const RKernel& ker, bool with_derivatives) {
    ker.validate();
    if (n < 1) throw DomainError("solve_t_n: n must be >= 1");
    const double two_pi_n = 2.0 * kPi * double(n);
    const cplx w = newton_root(n, ker.a);

    RootRecord rec;
    rec.n = n;
    rec.phi = w.real();
    rec.beta = w.imag();
    rec.t = two_pi_n + w;
    // |R(t)| via the reduced form R = g(w)/(t - ia): direct evaluation of
    // e^{-it} at |t| ~ 2*pi*n loses ~|t|*eps to argument reduction
    rec.residual = std::abs(root_g(w, two_pi_n, ker.a)) / std::abs(rec.t - kI * ker.a);
    if (with_derivatives) {
        const double da = 1e-4;
        const cplx w_hi = newton_root(n, ker.a + da);
        const cplx w_lo = newton_root(n, ker.a - da);
        rec.dbeta_da = (w_hi.imag() - w_lo.imag()) / (2.0 * da);
        rec.dphi_da = (w_hi.real() - w_lo.real()) / (2.0 * da);
    }
    return rec;
}

std::vector<RootRecord> solve_roots(int n_max, const RKernel& ker, bool with_derivatives) {
    if (n_max < 1) throw DomainError("solve_roots: n_max must be >= 1");
    std::vector<RootRecord> out;
    out.reserve(std::size_t(n_max));
    for (int n = 1; n <= n_max; ++n) out.push_back(solve_t_n(n, ker, with_derivatives));
    return out;
}

std::vector<cplx> all_upper_roots(int n_max, const RKernel& ker) {
    ker.validate();
    if (n_max < 1) throw DomainError("all_upper_roots: n_max must be >= 1");
    std::vector<cplx> out;
    out.reserve(2 * std::size_t(n_max) + 1);
    out.push_back(newton_root(0, ker.a));
    out.push_back(mirror_zero_root(ker.a));
    for (int n = 1; n <= n_max; ++n) {
        out.push_back(2.0 * kPi * double(n) + newton_root(n, ker.a));
        out.push_back(-2.0 * kPi * double(n) + newton_root(-n, ker.a));
    }
    return out;
}

void save_roots_csv(const std::vector<RootRecord>& roots, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_roots_csv: cannot open " + path);
    os << "n,beta,phi,residual,dbeta_da,dphi_da\n";
    char buf[256];
    for (const auto& r : roots) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.n, r.beta,
                      r.phi, r.residual, r.dbeta_da, r.dphi_da);
        os << buf;
    }
}

SeriesResult residue_series_I1(cplx k, const std::vector<cplx>& G_at_roots,
                               const std::vector<cplx>& roots, const Factorization& fac) {
    if (k.imag() >= 0.0) throw DomainError("residue_series_I1: requires Im k < 0");
    if (G_at_roots.size() != roots.size())
        throw DomainError("residue_series_I1: mismatched root/value counts");
    SeriesResult res{0.0, 0.0};
    std::vector<double> mags(roots.size());
    for (std::size_t j = 0; j < roots.size(); ++j) {
        const cplx term = G_at_roots[j] / (fac.x_minus_deriv(roots[j]) * (roots[j] - k));
        res.value += term;
        mags[j] = std::abs(term);
    }
    // crude tail proxy: the outermost decile of terms, scaled up
    std::vector<std::size_t> order(roots.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(roots[a]) < std::abs(roots[b]); });
    const std::size_t decile = std::max<std::size_t>(1, roots.size() / 10);
    double tail = 0.0;
    for (std::size_t j = order.size() - decile; j < order.size(); ++j) tail += mags[order[j]];
    res.tail_estimate = 2.0 * tail;
    return res;
}

std::pair<std::vector<cplx>, std::vector<cplx>> solve_RH(
    const SampledLineFunction& G, const Factorization& fac,
    const std::vector<double>& k_grid) {
    G.validate();
    // h = G / X_minus on the line; the boundary value of X_minus is R itself
    SampledLineFunction h = G;
    for (std::size_t j = 0; j < h.nodes.size(); ++j)
        h.values[j] = G.values[j] / R_eval(cplx(h.nodes[j], 0.0), fac.ker);

    std::vector<cplx> psi_plus(k_grid.size()), psi_minus(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const cplx z(k_grid[i], 0.0);
        psi_plus[i] = -fac.x_plus(k_grid[i]) * cauchy_project(h, z, Side::plus);
        psi_minus[i] = -fac.x_minus(k_grid[i]) * cauchy_project(h, z, Side::minus);
    }
    return {psi_plus, psi_minus};
}

}  // namespace critstrip
