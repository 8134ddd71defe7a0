#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace critstrip {

using cplx = std::complex<double>;

// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

// Integrate f over [a, b] with a fixed-order Gauss-Legendre rule.
template <typename F>
auto gl_integrate(F&& f, double a, double b, int order) -> decltype(f(0.0)) {
    const auto& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * acc;
}

// Adaptive Simpson quadrature for complex-valued integrands.
cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b,
                      double tol, int max_depth = 40);

}  // namespace critstrip
