#include "critstrip/primes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace critstrip {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::uint64_t kSieveCapacity = 2'000'000'000ULL;

// Branch-safe log zeta: principal in the comfortably convergent region,
// tracked continuation elsewhere. Targets with small |Im| take a detour
// above the real axis so the path clears the pole at s = 1.
cplx log_zeta_auto(cplx w, const ExclusionSet& excl) {
    if (w.real() >= 1.5) return std::log(eval_zeta(w));
    BranchPath path;
    path.exclusions = excl;
    if (std::abs(w.imag()) >= 0.75) {
        path.anchor = cplx(2.0, w.imag());
        path.waypoints = {w};
    } else {
        const double lift = w.imag() >= 0.0 ? 0.75 : -0.75;
        path.anchor = cplx(2.0, lift);
        path.waypoints = {cplx(w.real(), lift), w};
    }
    return log_zeta_tracked(path);
}

}  // namespace

PrimeTable PrimeTable::sieve(std::uint64_t limit) {
    if (limit < 2) throw DomainError("sieve: limit must be >= 2");
    if (limit > kSieveCapacity) throw DomainError("sieve: limit above memory budget");
    std::vector<bool> composite(limit + 1, false);
    PrimeTable t;
    t.limit = limit;
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) t.primes.push_back(static_cast<std::uint32_t>(i));
    return t;
}

void PrimeTable::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("PrimeTable::save: cannot open " + path);
    os << "limit=" << limit << "\n";
    for (auto p : primes) os << p << "\n";
}

PrimeTable PrimeTable::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("PrimeTable::load: cannot open " + path);
    std::string header;
    std::getline(is, header);
    if (header.rfind("limit=", 0) != 0)
        throw std::runtime_error("PrimeTable::load: missing limit header in " + path);
    PrimeTable t;
    t.limit = std::stoull(header.substr(6));
    std::uint32_t p;
    while (is >> p) t.primes.push_back(p);
    return t;
}

int mobius(std::uint64_t n) {
    if (n == 0) throw DomainError("mobius: n must be >= 1");
    int factors = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors % 2) ? -1 : 1;
}

void TruncationPolicy::validate() const {
    if (mobius_nmax < 8) throw DomainError("TruncationPolicy: mobius_nmax must be >= 8");
}

ValueWithTail prime_zeta_direct(cplx s, const PrimeTable& table, double tol) {
    require_finite(s, "prime_zeta_direct");
    const double sigma = s.real();
    if (sigma <= 1.0) throw DomainError("prime_zeta_direct: diverges for Re s <= 1");
    if (table.primes.empty()) throw InsufficientTableError("prime_zeta_direct: empty table");

    const double X = double(table.limit);
    const double lnX = std::log(X);
    auto tail_bound_n = [&](int n) {
        return std::pow(X, 1.0 - n * sigma) / ((n * sigma - 1.0) * lnX);
    };

    // How many Euler-product completion terms until the dropped tail is small.
    int n_star = 1;
    while (n_star < 10 && tail_bound_n(n_star + 1) > 0.1 * tol) ++n_star;
    if (tail_bound_n(n_star + 1) > 0.1 * tol && tail_bound_n(1) > tol)
        throw InsufficientTableError("prime_zeta_direct: table too small for tolerance");

    cplx sum = 0.0;
    for (auto p : table.primes) sum += std::exp(-s * std::log(double(p)));

    for (int n = 1; n <= n_star; ++n) {
        const int mu = mobius(n);
        if (mu == 0) continue;
        const cplx w = double(n) * s;
        cplx lz = log_zeta_auto(w, {});
        cplx prod_log = 0.0;
        const double p_cut = std::exp(44.0 / w.real());  // p^{-Re w} below 1e-19
        for (auto p : table.primes) {
            if (double(p) > p_cut) break;
            const cplx z = std::exp(-w * std::log(double(p)));
            prod_log += std::log(1.0 - z);
        }
        sum += double(mu) / double(n) * (lz + prod_log);
    }
    return {sum, 2.0 * tail_bound_n(n_star + 1)};
}

cplx prime_zeta_continued(cplx s, const TruncationPolicy& policy,
                          const ExclusionSet& excl, double delta) {
    require_finite(s, "prime_zeta_continued");
    policy.validate();
    if (s.real() <= delta)
        throw DomainError("prime_zeta_continued: requires Re s > delta");

    cplx sum = 0.0;
    double last_mag = 0.0;
    for (int n = 1; n <= policy.mobius_nmax; ++n) {
        const int mu = mobius(n);
        if (mu == 0) continue;
        const cplx w = double(n) * s;
        const cplx lz = (w.real() >= 1.1) ? std::log(eval_zeta(w)) : log_zeta_auto(w, excl);
        const cplx term = double(mu) / double(n) * lz;
        sum += term;
        last_mag = std::abs(term);
    }
    // |ln zeta(ns)| ~ 2^{-n sigma}; flag a cutoff that has not yet decayed.
    if (last_mag > 1e-9)
        throw AccuracyError("prime_zeta_continued: mobius_nmax insufficient for convergence");
    return sum;
}

ValueWithTail chernoff_C(cplx s, std::uint64_t cutoff) {
    require_finite(s, "chernoff_C");
    const double sigma = s.real();
    if (sigma <= 1.0) throw DomainError("chernoff_C: diverges for Re s <= 1");
    if (cutoff < 3) throw DomainError("chernoff_C: cutoff too small");

    cplx log_sum = 0.0;
    for (std::uint64_t n = 2; n <= cutoff; ++n) {
        const double base = double(n) * std::log(double(n));
        log_sum -= std::log(1.0 - std::exp(-s * std::log(base)));
    }
    const double X = double(cutoff);
    const double tail =
        std::pow(X * std::log(X), -sigma) * X / (sigma - 1.0);
    return {std::exp(log_sum), tail};
}

ValueWithTail prime_zeta_tail_sum(cplx s, int m, const PrimeTable& table) {
    require_finite(s, "prime_zeta_tail_sum");
    if (m < 1) throw DomainError("prime_zeta_tail_sum: m must be >= 1");
    if (m * s.real() <= 2.0)
        throw DomainError("prime_zeta_tail_sum: requires Re(m s) > 2");
    if (table.primes.empty()) throw InsufficientTableError("prime_zeta_tail_sum: empty table");

    const double mtau = m * s.real();
    cplx sum = 0.0;
    for (auto p : table.primes) {
        const double lp = std::log(double(p));
        if (mtau * lp > 44.0) break;  // |z|^m below 1e-19; bracket negligible
        const cplx z = std::exp(-s * lp);
        // sum_{n>=m} z^n/n  =  -ln(1-z) - sum_{n<m} z^n/n
        cplx partial = 0.0;
        cplx zn = z;
        for (int n = 1; n < m; ++n) {
            partial += zn / double(n);
            zn *= z;
        }
        sum += -std::log(1.0 - z) - partial;
    }
    const double X = double(table.limit);
    const double bound = std::pow(X, 1.0 - mtau) / ((mtau - 1.0) * double(m));
    return {sum, bound};
}

ReflectionContext make_reflection_context(double alpha, const ExclusionSet& excl,
                                          double sigma_ref) {
    ReflectionContext ctx;
    ctx.alpha = alpha;
    ctx.exclusions = excl;
    const cplx s(sigma_ref, alpha);
    const cplx lhs = log_zeta_auto(s, excl);
    const cplx rhs = log_zeta_auto(1.0 - s, excl);
    const cplx defect = lhs - rhs - F_factor(s);
    const double k = defect.imag() / (2.0 * kPi);
    ctx.branch_offset = int(std::lround(k));
    if (std::abs(defect - cplx(0.0, 2.0 * kPi * ctx.branch_offset)) > 1e-6)
        throw BranchError("make_reflection_context: defect not an integer multiple of 2 pi i");
    return ctx;
}

namespace {

// sum_{n=m}^{inf} P(ns)/n via per-term prime zeta values for the first few n
// (until Re(ns) > 2) and the prime-by-prime tail sum for the rest.
cplx pz_tail_mixed(cplx s, int m, const QmOptions& opts) {
    if (double(m) * s.real() <= 1.0001)
        throw DomainError("Q_m/F_m: requires m Re(s) > 1");
    int n0 = m;
    cplx head = 0.0;
    while (double(n0) * s.real() <= 2.0) {
        const cplx ns = double(n0) * s;
        cplx p_val;
        if (ns.real() > 1.05)
            p_val = prime_zeta_direct(ns, *opts.table, 1e-12).value;
        else
            p_val = prime_zeta_continued(ns, opts.policy, opts.exclusions);
        head += p_val / double(n0);
        ++n0;
    }
    return head + prime_zeta_tail_sum(s, n0, *opts.table).value;
}

}  // namespace

cplx Q_m(cplx s, int m, const QmOptions& opts) {
    if (m < 1) throw DomainError("Q_m: m must be >= 1");
    if (!opts.table) throw DomainError("Q_m: prime table required");
    const cplx lz = log_zeta_auto(s, opts.exclusions);
    return lz - pz_tail_mixed(s, m, opts);
}

cplx F_m(cplx s, int m, const QmOptions& opts) {
    if (m < 1) throw DomainError("F_m: m must be >= 1");
    if (!opts.table) throw DomainError("F_m: prime table required");
    return F_factor(s) - pz_tail_mixed(s, m, opts) + pz_tail_mixed(1.0 - s, m, opts);
}

double reflection_residual(cplx s, int m, const QmOptions& opts,
                           const ReflectionContext& ctx) {
    const cplx q_s = Q_m(s, m, opts);
    const cplx q_mirror = Q_m(1.0 - s, m, opts) + cplx(0.0, 2.0 * kPi * ctx.branch_offset);
    return std::abs(q_s - q_mirror - F_m(s, m, opts));
}

}  // namespace critstrip
