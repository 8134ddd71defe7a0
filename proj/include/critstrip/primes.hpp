#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "critstrip/zeta.hpp"

namespace critstrip {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;

    static PrimeTable sieve(std::uint64_t limit);

    // Text format: header line "limit=<N>", then one prime per line.
    void save(const std::string& path) const;
    static PrimeTable load(const std::string& path);
};

// Moebius function; 0 on non-squarefree n, else (-1)^{#prime factors}.
int mobius(std::uint64_t n);

struct TruncationPolicy {
    int mobius_nmax = 64;
    enum class TailMode { analytic, doubling } tail_bound_mode = TailMode::analytic;

    void validate() const;
};

struct ValueWithTail {
    cplx value;
    double tail_bound = 0.0;
};

// P(s) = sum over primes of p^{-s}, Re s > 1. The sieve sum over the table is
// completed by the exact Euler-product identity
//   sum_{p>X} p^{-s} = sum_n mu(n)/n [ln zeta(ns) + sum_{p<=X} ln(1 - p^{-ns})],
// which brings the truncation error down to the zeta-evaluation level; the
// reported tail bound covers the discarded completion terms.
ValueWithTail prime_zeta_direct(cplx s, const PrimeTable& table, double tol = 1e-12);

// Moebius continuation P(s) = sum_n mu(n)/n ln zeta(ns), valid for Re s > delta.
// Terms with Re(ns) < 1.1 use branch-tracked log zeta and need the exclusion set.
cplx prime_zeta_continued(cplx s, const TruncationPolicy& policy,
                          const ExclusionSet& excl = {}, double delta = 0.05);

// Chernoff's pseudo zeta C(s) = prod_{n>1} (1 - (n ln n)^{-s})^{-1}, Re s > 1.
ValueWithTail chernoff_C(cplx s, std::uint64_t cutoff);

// sum_{n=m}^{inf} P(ns)/n computed prime-by-prime:
//   sum_p [ -ln(1 - p^{-s}) - sum_{n<m} p^{-ns}/n ]
// over p <= table limit, plus an integral estimate of the continuation.
// Requires Re(m s) > 2 so every term sits in the absolutely convergent range.
ValueWithTail prime_zeta_tail_sum(cplx s, int m, const PrimeTable& table);

// Per-rectangle branch bookkeeping for the reflection identity. The tracked
// branches of ln zeta(s) and ln zeta(1-s) satisfy the reflection identity only
// up to an integer multiple of 2 pi i that is constant on each half of a
// zero-free rectangle; the context pins that integer once at a reference point.
struct ReflectionContext {
    double alpha = 0.0;       // ordinate of the horizontal line
    int branch_offset = 0;    // k with ln zeta(s) - ln zeta(1-s) - F(s) = 2 pi i k
    ExclusionSet exclusions;
};

ReflectionContext make_reflection_context(double alpha, const ExclusionSet& excl,
                                          double sigma_ref = 0.75);

struct QmOptions {
    const PrimeTable* table = nullptr;  // required
    TruncationPolicy policy;
    ExclusionSet exclusions;
};

// Q_m(s) = ln zeta(s) - sum_{n=m}^{inf} P(ns)/n.
cplx Q_m(cplx s, int m, const QmOptions& opts);

// F_m(s) = F(s) - sum_{n=m}^{inf} P(ns)/n + sum_{n=m}^{inf} P(n(1-s))/n.
cplx F_m(cplx s, int m, const QmOptions& opts);

// |Q_m(s) - Q_m(1-s) - F_m(s)| with the mirror branch fixed by ctx.
double reflection_residual(cplx s, int m, const QmOptions& opts,
                           const ReflectionContext& ctx);

}  // namespace critstrip
