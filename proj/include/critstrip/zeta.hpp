#pragma once

#include <complex>
#include <vector>

#include "critstrip/errors.hpp"

namespace critstrip {

using cplx = std::complex<double>;

// Throws DomainError if either coordinate is NaN or infinite.
void require_finite(cplx s, const char* where);

struct EvalOptions {
    double target_abs_error = 1e-13;
    int max_terms = 100000;
    int em_order = 25;  // Bernoulli correction terms

    void validate() const;
};

// Riemann zeta by Euler-Maclaurin summation. Valid well beyond the strip;
// tuned for |Im s| <= a few hundred. Throws PoleError at s = 1.
cplx eval_zeta(cplx s, const EvalOptions& opts = {});

// Continuous branch of log Gamma (real on the positive real axis, continuous
// on any path avoiding the nonpositive real axis). Stirling series after an
// upward recursion shift. Throws PoleError at nonpositive integers.
cplx eval_log_gamma(cplx s);

// theta(x) = sum_{n>=1} exp(-pi n^2 x), x > 0.
double theta_sum(double x);

struct CompletedZeta {
    cplx via_factors;   // pi^{-s/2} Gamma(s/2) zeta(s) from eval_zeta / eval_log_gamma
    cplx via_integral;  // 1/(s(s-1)) + int_1^inf (x^{s/2-1} + x^{-(1+s)/2}) theta(x) dx
};

// Both routes to the completed zeta. Poles at s = 0 and s = 1.
CompletedZeta completed_zeta(cplx s);

// Relative defect of Riemann's functional equation at s.
double functional_equation_residual(cplx s, const EvalOptions& opts = {});

// Points a branch-tracking path must stay away from (zeta zeros; the pole
// s = 1 is always included).
struct ExclusionSet {
    std::vector<cplx> points;
    double margin = 0.05;

    // Distance from s to the nearest excluded point (pole included).
    double clearance(cplx s) const;
};

struct BranchPath {
    cplx anchor;                   // must have Re >= 1.5 so the principal log applies
    std::vector<cplx> waypoints;   // visited in order after the anchor
    double step_cap = 1.5707963267948966;  // max phase step between samples
    ExclusionSet exclusions;

    static BranchPath vertical_to(cplx target, const ExclusionSet& excl = {});
};

// Continuous branch of log zeta along the path, anchored at the principal
// value at the anchor point. Throws BranchError if the path violates the
// exclusion margin or the phase step cannot be brought under step_cap.
cplx log_zeta_tracked(const BranchPath& path, const EvalOptions& opts = {});

// F(s) = (s/2) ln pi - ln Gamma(s/2) - ((1-s)/2) ln pi + ln Gamma((1-s)/2),
// defined on the open strip eps < Re s < 1 - eps.
cplx F_factor(cplx s, double strip_eps = 1e-9);

struct SupScan {
    double sup_abs = 0.0;   // sup |F|
    double sup_dtau = 0.0;  // sup |dF/dtau| (central difference)
};

// Scan of |F| and |dF/dtau| over a rectangle [re_lo,re_hi] x [im_lo,im_hi]
// and its mirror image in the real axis.
SupScan F_sup_scan(double re_lo, double re_hi, double im_lo, double im_hi,
                   int n_re = 21, int n_im = 21);

}  // namespace critstrip
