#include "critstrip/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace critstrip {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double rs_theta(double t) {
    const cplx lg = eval_log_gamma(cplx(0.25, 0.5 * t));
    return lg.imag() - 0.5 * t * std::log(kPi);
}

double hardy_Z(double t) {
    const cplx rot = std::exp(cplx(0.0, rs_theta(t)));
    return (rot * eval_zeta(cplx(0.5, t))).real();
}

std::vector<ZeroRecord> scan_zeros(double t_min, double t_max, double step) {
    if (!(t_min > 0.0 && t_min < t_max && t_max <= 100.0))
        throw DomainError("scan_zeros: need 0 < t_min < t_max <= 100");
    if (!(step > 0.0 && step <= 0.05))
        throw DomainError("scan_zeros: step must be in (0, 0.05]");

    std::vector<ZeroRecord> out;
    double t_prev = t_min;
    double z_prev = hardy_Z(t_prev);
    for (double t = t_min + step; t_prev < t_max; t = std::min(t + step, t_max + step)) {
        const double t_cur = std::min(t, t_max);
        const double z_cur = hardy_Z(t_cur);
        if (z_prev == 0.0 || z_prev * z_cur < 0.0) {
            double lo = t_prev, hi = t_cur, z_lo = z_prev;
            while (hi - lo > 1e-9) {
                const double mid = 0.5 * (lo + hi);
                const double z_mid = hardy_Z(mid);
                if (z_lo * z_mid <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    z_lo = z_mid;
                }
            }
            ZeroRecord rec;
            rec.ordinate = 0.5 * (lo + hi);
            rec.bracket_lo = lo;
            rec.bracket_hi = hi;
            rec.residual = std::abs(eval_zeta(cplx(0.5, rec.ordinate)));
            if (rec.residual > 1e-6)
                throw AccuracyError("scan_zeros: sign change did not converge to a zero");
            out.push_back(rec);
        }
        if (t_cur >= t_max) break;
        t_prev = t_cur;
        z_prev = z_cur;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].index = int(i) + 1;
        if (i > 0 && out[i].ordinate - out[i - 1].ordinate < 2.0 * step) {
            out[i].step_warning = true;
            out[i - 1].step_warning = true;
        }
    }
    for (auto& rec : out) rec.multiplicity = multiplicity(rec);
    return out;
}

int winding_count(const std::function<cplx(cplx)>& f, cplx center, double radius,
                  int n_samples) {
    if (n_samples < 16) throw DomainError("winding_count: n_samples too small");
    double accum = 0.0;
    cplx prev = f(center + cplx(radius, 0.0));
    for (int j = 1; j <= n_samples; ++j) {
        const double phi = 2.0 * kPi * double(j) / double(n_samples);
        const cplx cur = f(center + radius * std::exp(cplx(0.0, phi)));
        const double dphi = std::arg(cur / prev);
        if (std::abs(dphi) > 0.5 * kPi)
            throw AmbiguousWindingError("winding_count: phase step exceeds pi/2");
        accum += dphi;
        prev = cur;
    }
    const double turns = accum / (2.0 * kPi);
    const long rounded = std::lround(turns);
    if (std::abs(turns - double(rounded)) > 0.01)
        throw AmbiguousWindingError("winding_count: accumulated phase not near a multiple of 2 pi");
    return int(rounded);
}

int multiplicity(const ZeroRecord& z, double radius, int n_samples) {
    if (z.bracket_hi - z.bracket_lo > 1e-6)
        throw DomainError("multiplicity: zero bracket too wide");
    const cplx center(0.5, z.ordinate);
    const int w = winding_count([](cplx s) { return eval_zeta(s); }, center, radius,
                                n_samples);
    if (w < 1) throw AmbiguousWindingError("multiplicity: winding below 1 at a recorded zero");
    return w;
}

RectangleD build_rectangle(const std::vector<ZeroRecord>& zeros, int n, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.125))
        throw DomainError("build_rectangle: epsilon must lie in (0, 1/8)");
    if (n < 1 || std::size_t(n) + 1 > zeros.size())
        throw DomainError("build_rectangle: zeros n and n+1 not recorded");

    const double ord_n = zeros[std::size_t(n) - 1].ordinate;
    const double ord_next = zeros[std::size_t(n)].ordinate;
    const double d_n = 0.5 * (ord_next - ord_n);

    RectangleD r;
    r.n = n;
    r.epsilon = epsilon;
    r.re_lo = epsilon;
    r.re_hi = 1.0 - epsilon;
    r.im_lo = ord_n - d_n;
    r.im_hi = ord_n + d_n;
    r.center_line = ord_n;
    r.mirror_im_lo = -r.im_hi;
    r.mirror_im_hi = -r.im_lo;

    // coarse interior floor scan, avoiding the excluded center band
    double floor_abs = std::numeric_limits<double>::infinity();
    const int n_re = 13, n_im = 25;
    for (int i = 0; i <= n_re; ++i) {
        const double re = r.re_lo + (r.re_hi - r.re_lo) * double(i) / double(n_re);
        for (int j = 0; j <= n_im; ++j) {
            const double im = r.im_lo + (r.im_hi - r.im_lo) * double(j) / double(n_im);
            if (std::abs(im - r.center_line) < r.center_band) continue;
            floor_abs = std::min(floor_abs, std::abs(eval_zeta(cplx(re, im))));
        }
    }
    r.grid_min_abs_zeta = floor_abs;
    return r;
}

void save_zeros_csv(const std::vector<ZeroRecord>& zeros, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_zeros_csv: cannot open " + path);
    os << "index,ordinate,bracket_lo,bracket_hi,multiplicity,residual\n";
    char buf[256];
    for (const auto& z : zeros) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d,%.17g\n", z.index,
                      z.ordinate, z.bracket_lo, z.bracket_hi, z.multiplicity, z.residual);
        os << buf;
    }
}

std::vector<ZeroRecord> load_zeros_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_zeros_csv: cannot open " + path);
    std::string line;
    std::getline(is, line);  // header
    std::vector<ZeroRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        ZeroRecord z;
        char c;
        ss >> z.index >> c >> z.ordinate >> c >> z.bracket_lo >> c >> z.bracket_hi >>
            c >> z.multiplicity >> c >> z.residual;
        if (!ss) throw std::runtime_error("load_zeros_csv: malformed row in " + path);
        out.push_back(z);
    }
    return out;
}

}  // namespace critstrip
