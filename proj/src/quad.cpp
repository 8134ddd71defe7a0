#include "critstrip/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace critstrip {

static GaussLegendre make_rule(int n) {
    GaussLegendre r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, refined by Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
    return it->second;
}

static cplx simpson(const std::function<cplx(double)>& f, double a, double b,
                    cplx fa, cplx fm, cplx fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

static cplx simpson_rec(const std::function<cplx(double)>& f, double a, double b,
                        cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const cplx flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    const cplx left = simpson(f, a, m, fa, flm, fm);
    const cplx right = simpson(f, m, b, fm, frm, fb);
    const cplx delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b,
                      double tol, int max_depth) {
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, max_depth);
}

}  // namespace critstrip
