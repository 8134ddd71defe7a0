#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "critstrip/errors.hpp"
#include "critstrip/zeta.hpp"  // cplx, require_finite

namespace critstrip {

// Scalar jump kernel R(k) = e^{-ik}/(k - ia) + 1.
struct RKernel {
    double a = 3.0;

    void validate() const {
        if (!(a > 2.0)) throw DomainError("RKernel: requires a > 2");
    }
};

cplx R_eval(cplx k, const RKernel& ker);
cplx R_deriv(cplx k, const RKernel& ker);

// Winding number of f along [-k_max, k_max] by phase accumulation with
// adaptive refinement; throws on ambiguous closure.
int line_winding(const std::function<cplx(double)>& f, double k_max,
                 int n_samples = 1 << 14);

// Winding of R over the real line (closure correction from R -> 1 at infinity).
int index_R(const RKernel& ker, double k_max);

// Function sampled on a uniform real mesh, with an assumed power-law decay
// |f| <= C (1+|k|)^{-decay_exponent} used for tail corrections.
struct SampledLineFunction {
    std::vector<double> nodes;   // strictly increasing, uniform
    std::vector<cplx> values;
    double decay_exponent = 1.0;

    double spacing() const { return nodes[1] - nodes[0]; }
    cplx interpolate(double x) const;  // local cubic
    void validate() const;

    static SampledLineFunction tabulate(const std::function<cplx(double)>& f,
                                        double k_max, std::size_t n,
                                        double decay_exponent);
};

enum class Side { plus, minus, principal };

// Cauchy integral (1/2pi i) \int f(t)/(t-z) dt with principal-value
// singularity subtraction on the line and power-law tail corrections;
// side selects the boundary limit for real z (plus: +f/2, minus: -f/2).
cplx cauchy_project(const SampledLineFunction& f, cplx z, Side side);

// Wiener-Hopf style factorization R = X_minus / X_plus built from the
// unwrapped log of R on [-k_max, k_max].
struct Factorization {
    RKernel ker;
    SampledLineFunction log_r;   // continuous branch along the line
    int sign = -1;               // gamma_pm = sign * T_pm(log R)

    cplx gamma_plus(double k) const;
    cplx gamma_minus(double k) const;
    cplx x_plus(double k) const;
    cplx x_minus(double k) const;   // defined as R * x_plus (exact relation)
    // Analytic continuation of X_minus into the upper half-plane:
    // R(z) * exp(sign * C(z)) with C the plain Cauchy transform of log R.
    cplx x_minus_continued(cplx z) const;
    // Central-difference derivative of the continuation, step 1e-5.
    cplx x_minus_deriv(cplx z) const;
};

Factorization factorize(const RKernel& ker, double k_max = 2000.0,
                        std::size_t n_nodes = 1 << 16);

// One root t_n = 2 pi n + phi_n + i beta_n of R(k) = 0 in the upper half-plane.
struct RootRecord {
    int n = 0;
    double beta = 0.0;
    double phi = 0.0;
    cplx t;
    double residual = 0.0;    // |R(t)|
    double dbeta_da = 0.0;
    double dphi_da = 0.0;
};

// Newton solve for the root indexed by n (n >= 1: roots near 2 pi n + pi;
// with_derivatives adds central-difference da-sensitivities).
RootRecord solve_t_n(int n, const RKernel& ker, bool with_derivatives = true);

std::vector<RootRecord> solve_roots(int n_max, const RKernel& ker,
                                    bool with_derivatives = false);

// All upper-half-plane roots with |Re t| <= ~2 pi n_max: the family near
// +2 pi n (n >= 0) and its companion family near -2 pi n (n >= 1).
std::vector<cplx> all_upper_roots(int n_max, const RKernel& ker);

void save_roots_csv(const std::vector<RootRecord>& roots, const std::string& path);

struct SeriesResult {
    cplx value;
    double tail_estimate = 0.0;
};

// Residue expansion of (1/2pi i) \int G(t) / (X_minus(t) (t - k)) dt for
// Im k < 0: sum of G(t_n) / (X_minus'(t_n) (t_n - k)) over upper roots.
SeriesResult residue_series_I1(cplx k, const std::vector<cplx>& G_at_roots,
                               const std::vector<cplx>& roots,
                               const Factorization& fac);

// Plemelj solution of the additive jump problem Psi_minus = R Psi_plus + G:
// Psi_pm = -X_pm * T_pm(G / X_minus) evaluated on k_grid.
std::pair<std::vector<cplx>, std::vector<cplx>> solve_RH(
    const SampledLineFunction& G, const Factorization& fac,
    const std::vector<double>& k_grid);

}  // namespace critstrip
