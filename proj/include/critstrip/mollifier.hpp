#pragma once

#include <vector>

#include "critstrip/errors.hpp"

namespace critstrip {

// Smoothed window on (0,1): a hard indicator nu supported on two side bands,
// convolved with a compactly supported bump psi of half-width epsilon.
struct MollifierParams {
    double epsilon = 0.06;
    int quad_points = 64;

    void validate() const {
        if (!(epsilon > 0.0 && epsilon < 0.125))
            throw DomainError("MollifierParams: epsilon must lie in (0, 1/8)");
        if (quad_points < 8) throw DomainError("MollifierParams: quad_points too small");
    }
};

// Indicator of the side bands: 1 on [eps, 1/2 - 2*eps] and its mirror
// [1/2 + 2*eps, 1 - eps], 0 elsewhere (outside (eps, 1-eps) and on the
// central band of width 4*eps).
double nu(double t, const MollifierParams& p);

// Normalized bump: sigma * exp(1/(u^2-1)) on (-1,1), 0 outside; integral 1.
double psi(double u);

// Scaled bump psi_eps(u) = psi(u/eps)/eps.
double psi_scaled(double u, double eps);

// mu = nu * psi_eps (convolution). Smooth, equal to 1 on the plateaus
// [2*eps, 1/2 - 3*eps] and [1/2 + 3*eps, 1 - 2*eps], 0 on the central
// band (1/2 - eps, 1/2 + eps).
double mu(double t, const MollifierParams& p);

// Max |mu(t) - mu(1-t)| over a uniform probe grid.
double mu_symmetry_defect(const MollifierParams& p, int n_probe = 400);

}  // namespace critstrip
