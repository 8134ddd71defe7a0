#include "critstrip/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace critstrip {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI(0.0, 1.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

// trapezoid of samples[j] * e^{phase_sign * i k tau_j} via twiddle recurrence
cplx windowed_transform(const std::vector<double>& tau, const std::vector<cplx>& samples,
                        cplx k, double phase_sign) {
    const double h = tau[1] - tau[0];
    cplx twiddle = std::exp(phase_sign * kI * k * tau[0]);
    const cplx ratio = std::exp(phase_sign * kI * k * h);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < tau.size(); ++j) {
        const double w = (j == 0 || j + 1 == tau.size()) ? 0.5 : 1.0;
        sum += w * samples[j] * twiddle;
        twiddle *= ratio;
    }
    return kInvSqrt2Pi * h * sum;
}

}  // namespace

StripSegment build_segment(const RectangleD& rect, double alpha, int m,
                           const QmOptions& opts, const ReflectionContext& ctx,
                           const MollifierParams& mp, std::size_t n_nodes) {
    mp.validate();
    if (m < 1 || mp.epsilon <= 2.0 / double(m))
        throw DomainError("build_segment: requires epsilon > 2/m");
    if (!opts.table) throw DomainError("build_segment: prime table required");
    if (!(alpha > rect.im_lo && alpha < rect.im_hi))
        throw DomainError("build_segment: alpha outside the rectangle");
    if (std::abs(alpha - rect.center_line) < 1e-2)
        throw DomainError("build_segment: alpha too close to the zero ordinate");
    if (n_nodes < 64) throw DomainError("build_segment: mesh too coarse");

    const double eps = mp.epsilon;
    StripSegment seg;
    seg.alpha = alpha;
    seg.epsilon = eps;
    seg.m = m;
    seg.tau.resize(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j)
        seg.tau[j] = eps + (1.0 - 2.0 * eps) * double(j) / double(n_nodes - 1);

    // tracked ln zeta along the segment: continue from the right endpoint
    // (itself continued from the anchor column Re s = 2), then walk left
    // node by node accumulating principal ratio logs
    std::vector<cplx> lnz(n_nodes), zeta_vals(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j)
        zeta_vals[j] = eval_zeta(cplx(seg.tau[j], alpha));

    BranchPath entry;
    entry.anchor = cplx(2.0, alpha);
    entry.exclusions = ctx.exclusions;
    const double right = seg.tau.back();
    for (double x = 2.0; x > right + 0.04; x -= 0.04)
        entry.waypoints.push_back(cplx(x, alpha));
    entry.waypoints.push_back(cplx(right, alpha));
    lnz[n_nodes - 1] = log_zeta_tracked(entry);

    for (std::size_t j = n_nodes - 1; j-- > 0;) {
        const cplx ratio = zeta_vals[j] / zeta_vals[j + 1];
        const cplx step = std::log(ratio);
        if (std::abs(step.imag()) > 0.5 * kPi)
            throw BranchError("build_segment: phase step exceeds pi/2 on the mesh");
        lnz[j] = lnz[j + 1] + step;
    }

    seg.q.resize(n_nodes);
    seg.q_mirror.resize(n_nodes);
    seg.f_eps.resize(n_nodes);
    std::vector<cplx> tail(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j)
        tail[j] = prime_zeta_tail_sum(cplx(seg.tau[j], alpha), m, *opts.table).value;

    const cplx branch_shift(0.0, 2.0 * kPi * ctx.branch_offset);
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const cplx s(seg.tau[j], alpha);
        const double w = mu(seg.tau[j], mp);
        const cplx qm_upper = lnz[j] - tail[j];
        seg.q[j] = qm_upper * w;
        // Schwarz reflection gives the natural lower-line value; the branch
        // constant of the component aligns it with the reflection identity
        seg.q_mirror[j] = (std::conj(qm_upper) + branch_shift) * w;
        seg.f_eps[j] = (F_factor(s) - tail[j] + std::conj(tail[seg.mirror(j)])) * w;
    }
    return seg;
}

cplx transform_I(const StripSegment& seg, cplx k) {
    require_finite(k, "transform_I");
    if (k.imag() > 1e-9)
        throw DomainError("transform_I: defined for Im k <= 0");
    return windowed_transform(seg.tau, seg.q, k, -1.0);
}

cplx transform_J(const StripSegment& seg, cplx k) {
    require_finite(k, "transform_J");
    if (k.imag() < -1e-9)
        throw DomainError("transform_J: defined for Im k >= 0");
    return windowed_transform(seg.tau, seg.q_mirror, k, +1.0);
}

cplx transform_Ftilde(const StripSegment& seg, cplx k) {
    require_finite(k, "transform_Ftilde");
    return windowed_transform(seg.tau, seg.f_eps, k, -1.0);
}

double reflection_fourier_residual(const StripSegment& seg, double k) {
    const cplx i_val = transform_I(seg, k);
    const cplx j_val = transform_J(seg, k);
    const cplx f_val = transform_Ftilde(seg, k);
    return std::abs(i_val - std::exp(-kI * k) * j_val - f_val);
}

QNorms q_norms(const StripSegment& seg) {
    QNorms out;
    const double h = seg.spacing();
    double l2sq = 0.0;
    for (std::size_t j = 0; j < seg.q.size(); ++j) {
        const double w = (j == 0 || j + 1 == seg.q.size()) ? 0.5 * h : h;
        const double mag = std::abs(seg.q[j]);
        out.l1 += w * mag;
        l2sq += w * mag * mag;
        out.sup = std::max(out.sup, mag);
        if (j > 0 && j + 1 < seg.q.size())
            out.dsup = std::max(out.dsup,
                                std::abs(seg.q[j + 1] - seg.q[j - 1]) / (2.0 * h));
    }
    out.l2 = std::sqrt(l2sq);
    return out;
}

double inversion_check(const StripSegment& seg, double N,
                       const std::vector<double>& t_probe) {
    if (N <= 0.0) throw DomainError("inversion_check: N must be positive");
    const double eps = seg.epsilon;
    const double jumps[] = {eps, 0.5 - 2.0 * eps, 0.5 + 2.0 * eps, 1.0 - eps};
    for (double t : t_probe) {
        if (!(t > eps && t < 1.0 - eps))
            throw DomainError("inversion_check: probe outside (eps, 1-eps)");
        for (double j : jumps)
            if (std::abs(t - j) < 1e-9)
                throw DomainError("inversion_check: probe at a cutoff jump point");
    }

    const double dk = 0.1;
    const std::size_t n_k = std::size_t(std::ceil(2.0 * N / dk)) + 1;
    std::vector<cplx> i_vals(n_k);
    std::vector<double> k_vals(n_k);
    for (std::size_t i = 0; i < n_k; ++i) {
        k_vals[i] = -N + 2.0 * N * double(i) / double(n_k - 1);
        i_vals[i] = transform_I(seg, cplx(k_vals[i], 0.0));
    }
    const double hk = k_vals[1] - k_vals[0];

    double worst = 0.0;
    for (double t : t_probe) {
        cplx recon = 0.0;
        for (std::size_t i = 0; i < n_k; ++i) {
            const double w = (i == 0 || i + 1 == n_k) ? 0.5 : 1.0;
            recon += w * i_vals[i] * std::exp(kI * (k_vals[i] * t));
        }
        recon *= kInvSqrt2Pi * hk;
        // compare against the sampled q at the nearest mesh node
        const std::size_t j = std::size_t(
            std::lround((t - seg.tau.front()) / seg.spacing()));
        worst = std::max(worst, std::abs(recon - seg.q[std::min(j, seg.q.size() - 1)]));
    }
    return worst;
}

void save_transform_csv(const std::vector<TransformRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_transform_csv: cannot open " + path);
    os << "k_re,k_im,value_re,value_im,tag\n";
    char buf[320];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s\n", r.k_re, r.k_im,
                      r.value.real(), r.value.imag(), r.tag.c_str());
        os << buf;
    }
}

}  // namespace critstrip
