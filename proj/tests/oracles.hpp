#pragma once

#include <complex>
#include <vector>

// Independent reference implementations and frozen high-precision constants
// used only by the test suite. Nothing here shares code with the library.
namespace oracles {

using cplx = std::complex<double>;

// Riemann zeta through the accelerated alternating series
// (Chebyshev-weighted eta), reliable in the strip for |Im s| <= ~60.
cplx zeta_eta(cplx s, int n_terms = 100);

// Critical-line phase by its asymptotic expansion; accurate for t >= 10.
double theta_phase(double t);

// Rotated real boundary signal built only from the two oracles above.
double hardy_signal(double t);

// Primes below limit by trial division.
std::vector<unsigned> primes_below(unsigned limit);

// Bisection on hardy_signal inside [lo, hi] (must bracket a sign change).
double bisect_zero(double lo, double hi, double tol = 1e-9);

// Frozen constants (50-digit arbitrary-precision computations, rounded).
inline constexpr double kZeroOrdinates[10] = {
    14.1347251417347, 21.0220396387716, 25.0108575801457, 30.4248761258595,
    32.9350615877392, 37.5861781588257, 40.9187190121475, 43.3270732809150,
    48.0051508811672, 49.7738324776723};

inline constexpr double kThetaSumAt1 = 0.0432174056066540;    // sum exp(-pi n^2)
inline constexpr double kThetaSumAt10 = 2.27110106832409e-14;
inline constexpr double kBumpNorm = 2.25228362104358;         // 1/int exp(1/(u^2-1))
inline constexpr double kBumpAt0 = 0.828568839869105;         // kBumpNorm * e^{-1}
inline constexpr double kPrimeZetaAt2 = 0.452247420041065498;
inline constexpr double kPrimeZetaAt4 = 0.0769931397642468;
inline constexpr double kZetaAt2 = 1.64493406684822643647;

// Kernel roots of e^{-ik}/(k - 3i) + 1 (frozen Newton at quad precision).
inline constexpr cplx kRoot0{3.57042017742, 1.36759425967};
inline constexpr cplx kRoot1{9.50304745138, 2.25467872066};
inline constexpr cplx kRootMirror1{-6.45502853603, 1.87969773901};

}  // namespace oracles
