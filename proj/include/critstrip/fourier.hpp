#pragma once

#include <string>
#include <vector>

#include "critstrip/mollifier.hpp"
#include "critstrip/primes.hpp"
#include "critstrip/zeros.hpp"

namespace critstrip {

// Mollified Q_m sampled on a horizontal segment tau + i*alpha of the strip,
// together with the matching mirror-line and F_m samples needed by the
// reflected transform identity.
struct StripSegment {
    double alpha = 0.0;
    double epsilon = 0.0;
    int m = 0;
    std::vector<double> tau;      // uniform mesh over [eps, 1-eps]
    std::vector<cplx> q;          // Q_m(tau + i alpha) * mu(tau)
    std::vector<cplx> q_mirror;   // branch-matched Q_m(tau - i alpha) * mu(tau)
    std::vector<cplx> f_eps;      // F_m(tau + i alpha) * mu(tau)

    double spacing() const { return tau[1] - tau[0]; }
    std::size_t mirror(std::size_t j) const { return tau.size() - 1 - j; }
};

// Samples Q_m along the segment by a continuously tracked horizontal walk of
// ln zeta from the anchor column Re s = 2. alpha must sit strictly inside the
// rectangle, at least 1e-2 away from the zero ordinate on its center line.
StripSegment build_segment(const RectangleD& rect, double alpha, int m,
                           const QmOptions& opts, const ReflectionContext& ctx,
                           const MollifierParams& mp, std::size_t n_nodes = 1 << 12);

// I(k) = (1/sqrt(2 pi)) \int q(tau) e^{-ik tau} dtau  (trapezoid)
cplx transform_I(const StripSegment& seg, cplx k);
// J(k) = (1/sqrt(2 pi)) \int q_mirror(tau) e^{+ik tau} dtau
cplx transform_J(const StripSegment& seg, cplx k);
// same transform as I applied to the F_m samples
cplx transform_Ftilde(const StripSegment& seg, cplx k);

// |I(k) - e^{-ik} J(k) - Ftilde(k)| at real k.
double reflection_fourier_residual(const StripSegment& seg, double k);

struct QNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double sup = 0.0;
    double dsup = 0.0;  // max central-difference |dq/dtau|
};
QNorms q_norms(const StripSegment& seg);

// Finite-window Fourier inversion: sup over probes of
// |(1/sqrt(2 pi)) \int_{-N}^{N} I(k) e^{ikt} dk - q(t)|.
double inversion_check(const StripSegment& seg, double N,
                       const std::vector<double>& t_probe);

struct TransformRow {
    double k_re = 0.0, k_im = 0.0;
    cplx value;
    std::string tag;
};
void save_transform_csv(const std::vector<TransformRow>& rows, const std::string& path);

}  // namespace critstrip
