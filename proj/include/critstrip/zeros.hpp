#pragma once

#include <functional>
#include <string>
#include <vector>

#include "critstrip/errors.hpp"
#include "critstrip/zeta.hpp"

namespace critstrip {

// One nontrivial zero on the critical line.
struct ZeroRecord {
    int index = 0;             // 1-based position in the ordinate ordering
    double ordinate = 0.0;     // Im of the zero
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int multiplicity = 1;
    double residual = 0.0;     // |zeta(1/2 + i*ordinate)|
    bool step_warning = false; // scan step suspected too coarse near this zero
};

// Zero-free rectangle between consecutive zero ordinates, plus its mirror.
struct RectangleD {
    int n = 0;
    double epsilon = 0.0;
    double re_lo = 0.0, re_hi = 0.0;
    double im_lo = 0.0, im_hi = 0.0;     // [ordinate_n - d_n, ordinate_n + d_n]
    double center_line = 0.0;            // excluded horizontal line Im s = ordinate_n
    double center_band = 1e-3;           // numerical scans avoid this band around it
    double mirror_im_lo = 0.0, mirror_im_hi = 0.0;
    double grid_min_abs_zeta = 0.0;      // coarse interior floor scan result
};

// Phase on the critical line: theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi.
double rs_theta(double t);

// Real-valued rotated boundary signal Z(t) = Re[e^{i theta(t)} zeta(1/2+it)].
double hardy_Z(double t);

// Bracket every sign change of Z on [t_min, t_max] and bisect to 1e-9.
std::vector<ZeroRecord> scan_zeros(double t_min, double t_max, double step = 0.02);

// Winding of f around a circle |z - center| = radius by phase accumulation.
int winding_count(const std::function<cplx(cplx)>& f, cplx center, double radius,
                  int n_samples = 256);

// Winding of zeta around the recorded zero; also checks the sanity bound
// multiplicity < 2 ln|s_n|.
int multiplicity(const ZeroRecord& z, double radius = 1e-3, int n_samples = 256);

// Rectangle between zeros n and n+1 (1-based), with a coarse |zeta| floor
// scan of the interior avoiding the excluded center band.
RectangleD build_rectangle(const std::vector<ZeroRecord>& zeros, int n, double epsilon);

// CSV persistence: index, ordinate, bracket_lo, bracket_hi, multiplicity, residual.
void save_zeros_csv(const std::vector<ZeroRecord>& zeros, const std::string& path);
std::vector<ZeroRecord> load_zeros_csv(const std::string& path);

}  // namespace critstrip
