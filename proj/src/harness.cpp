#include "critstrip/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <mutex>
#include <random>
#include <sstream>

#include <json.hpp>

namespace critstrip {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI(0.0, 1.0);

using json = nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Shared heavyweight artifacts, built lazily and cached for the whole run.
struct Shared {
    const SuiteConfig& cfg;
    explicit Shared(const SuiteConfig& c) : cfg(c) {}

    std::mutex mu;
    std::shared_ptr<PrimeTable> big_;
    std::shared_ptr<PrimeTable> small_;
    std::shared_ptr<std::vector<ZeroRecord>> zeros_;
    std::map<int, RectangleD> rects_;
    std::map<std::pair<double, double>, std::shared_ptr<Factorization>> facs_;

    const PrimeTable& big() {
        std::lock_guard lk(mu);
        if (!big_) big_ = std::make_shared<PrimeTable>(PrimeTable::sieve(cfg.sieve_limit));
        return *big_;
    }
    const PrimeTable& small_table() {
        std::lock_guard lk(mu);
        if (!small_) small_ = std::make_shared<PrimeTable>(PrimeTable::sieve(20000));
        return *small_;
    }
    const std::vector<ZeroRecord>& zeros() {
        std::lock_guard lk(mu);
        if (!zeros_)
            zeros_ = std::make_shared<std::vector<ZeroRecord>>(
                scan_zeros(cfg.zero_scan_lo, cfg.zero_scan_hi, cfg.zero_scan_step));
        return *zeros_;
    }
    ExclusionSet exclusions() {
        ExclusionSet ex;
        for (const auto& z : zeros()) {
            ex.points.push_back(cplx(0.5, z.ordinate));
            ex.points.push_back(cplx(0.5, -z.ordinate));
        }
        return ex;
    }
    const RectangleD& rect(int n) {
        const auto& zs = zeros();
        std::lock_guard lk(mu);
        auto it = rects_.find(n);
        if (it == rects_.end())
            it = rects_.emplace(n, build_rectangle(zs, n, cfg.epsilon)).first;
        return it->second;
    }
    const Factorization& fac(double a, double k_max, std::size_t n_nodes) {
        std::lock_guard lk(mu);
        auto key = std::make_pair(a, k_max);
        auto it = facs_.find(key);
        if (it == facs_.end()) {
            RKernel ker{a};
            it = facs_.emplace(key, std::make_shared<Factorization>(
                                        factorize(ker, k_max, n_nodes)))
                     .first;
        }
        return *it->second;
    }
};

double tol(const SuiteConfig& cfg, double base) { return base * cfg.tol_scale; }

// ---------------------------------------------------------------- checks ---

void check_functional_equation(CheckReport& rep, Shared& sh) {
    std::mt19937_64 rng(sh.cfg.seed ^ 0x1);
    std::uniform_real_distribution<double> u_sig(0.1, 0.9), u_t(1.0, 50.0), u_sign(0.0, 1.0);
    double worst = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        const double t = (u_sign(rng) < 0.5 ? -1.0 : 1.0) * u_t(rng);
        worst = std::max(worst, functional_equation_residual(cplx(u_sig(rng), t)));
    }
    rep.params["route"] = "completed zeta by Euler-Maclaurin + Stirling, both sides";
    rep.values["points"] = n;
    rep.values["max_residual"] = worst;
    rep.residual = worst;
    rep.tolerance = tol(sh.cfg, 1e-8);
}

void check_mobius_cross_route(CheckReport& rep, Shared& sh) {
    const auto& table = sh.big();
    std::mt19937_64 rng(sh.cfg.seed ^ 0x2);
    std::uniform_real_distribution<double> u_sig(1.1001, 3.0), u_t(-30.0, 30.0);
    TruncationPolicy policy;
    double worst = 0.0;
    const int n = 100;
    for (int i = 0; i < n; ++i) {
        const cplx s(u_sig(rng), u_t(rng));
        const cplx direct = prime_zeta_direct(s, table, 1e-12).value;
        const cplx cont = prime_zeta_continued(s, policy);
        worst = std::max(worst, std::abs(direct - cont));
    }
    rep.params["route"] = "sieved Euler-completed sum vs Mobius-weighted log zeta";
    rep.values["points"] = n;
    rep.values["sieve_limit"] = double(table.limit);
    rep.values["max_diff"] = worst;
    rep.residual = worst;
    rep.tolerance = tol(sh.cfg, 1e-8);
}

void check_telescoping(CheckReport& rep, Shared& sh) {
    const auto& table = sh.big();
    QmOptions opts;
    opts.table = &table;
    std::mt19937_64 rng(sh.cfg.seed ^ 0x3);
    std::uniform_real_distribution<double> u_sig(1.15, 3.0), u_t(0.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        const cplx s(u_sig(rng), u_t(rng));
        const cplx q1 = Q_m(s, 1, opts);
        const cplx q2 = Q_m(s, 2, opts);
        const cplx p = prime_zeta_direct(s, table, 1e-12).value;
        worst = std::max({worst, std::abs(q1), std::abs(q2 - p)});
    }
    rep.params["route"] = "log zeta minus per-prime tail sums vs direct prime zeta";
    rep.values["max_defect"] = worst;
    rep.residual = worst;
    rep.tolerance = tol(sh.cfg, 1e-9);
}

void check_reflection_identity(CheckReport& rep, Shared& sh) {
    const auto& table = sh.small_table();
    const auto excl = sh.exclusions();
    QmOptions opts;
    opts.table = &table;
    opts.exclusions = excl;
    const int m = sh.cfg.m_value;
    std::mt19937_64 rng(sh.cfg.seed ^ 0x4);
    double worst = 0.0;
    int points = 0;
    for (int idx : sh.cfg.rectangle_indices) {
        const auto& rect = sh.rect(idx);
        std::uniform_real_distribution<double> u_sig(rect.re_lo + 0.01, rect.re_hi - 0.01);
        std::uniform_real_distribution<double> u_al(rect.im_lo + 0.05, rect.im_hi - 0.05);
        int taken = 0;
        while (taken < 17) {
            const double alpha = u_al(rng);
            const double sigma = u_sig(rng);
            if (std::abs(alpha - rect.center_line) < 0.06) continue;
            const auto ctx = make_reflection_context(alpha, excl);
            worst = std::max(worst, reflection_residual(cplx(sigma, alpha), m, opts, ctx));
            ++taken;
            ++points;
        }
    }
    rep.params["route"] = "tracked log zeta + per-prime tails, branch constant per component";
    rep.values["points"] = points;
    rep.values["m"] = m;
    rep.values["max_residual"] = worst;
    rep.residual = worst;
    rep.tolerance = tol(sh.cfg, 1e-7);
}

void check_mollifier(CheckReport& rep, Shared& sh) {
    MollifierParams p;
    p.epsilon = sh.cfg.epsilon;
    const double sym = mu_symmetry_defect(p, 1000);
    double plateau = 0.0;
    const double lo = 0.5 + 3.0 * p.epsilon, hi = 1.0 - 3.0 * p.epsilon;
    for (int i = 0; i <= 200; ++i) {
        const double x = lo + (hi - lo) * double(i) / 200.0;
        plateau = std::max(plateau, std::abs(mu(x, p) - 1.0));
    }
    rep.params["route"] = "bump convolution by Gauss-Legendre cumulative steps";
    rep.values["symmetry_defect"] = sym;
    rep.values["plateau_defect"] = plateau;
    rep.residual = std::max(sym, plateau);
    rep.tolerance = tol(sh.cfg, 1e-10);
}

void check_zero_location(CheckReport& rep, Shared& sh) {
    const auto& zs = sh.zeros();
    double worst = 0.0;
    int mult_defect = 0, backlund_fail = 0;
    for (const auto& z : zs) {
        worst = std::max(worst, z.residual);
        if (z.multiplicity != 1) ++mult_defect;
        const double bound = 2.0 * std::log(std::abs(cplx(0.5, z.ordinate)));
        if (!(double(z.multiplicity) < bound)) ++backlund_fail;
    }
    rep.params["route"] = "rotated boundary signal sign changes + phase winding";
    rep.values["count"] = double(zs.size());
    rep.values["max_abs_zeta"] = worst;
    rep.values["multiplicity_defects"] = mult_defect;
    rep.values["bound_failures"] = backlund_fail;
    rep.residual = worst + double(mult_defect + backlund_fail);
    rep.tolerance = tol(sh.cfg, 1e-6);
}

void check_index_factorization(CheckReport& rep, Shared& sh) {
    double worst = 0.0;
    for (double a : sh.cfg.a_values) {
        RKernel ker{a};
        const int ind = index_R(ker, 1000.0);
        worst = std::max(worst, double(std::abs(ind)));
        const auto& fac = sh.fac(a, 2000.0, std::size_t(1) << 16);
        const double K = sh.cfg.k_window;
        for (double k = -K; k <= K + 1e-9; k += 1.0) {
            worst = std::max(worst, std::abs(fac.x_plus(k) - 1.0));
            worst = std::max(worst, std::abs(fac.x_minus(k) - R_eval(cplx(k, 0.0), ker)));
        }
    }
    rep.params["route"] = "phase-accumulated winding; Plemelj transforms of unwrapped log R";
    rep.values["max_defect"] = worst;
    rep.residual = worst;
    rep.tolerance = tol(sh.cfg, 5e-3);
}

void check_projection_identities(CheckReport& rep, Shared& sh) {
    const double K = 200.0;
    const std::size_t n = 1 << 13;
    struct Case {
        const char* name;
        std::function<cplx(double)> f;
        double decay;
    };
    const std::vector<Case> family = {
        {"1/(t+i)", [](double t) { return 1.0 / (cplx(t, 0.0) + kI); }, 1.0},
        {"1/(t^2+4)", [](double t) { return cplx(1.0 / (t * t + 4.0), 0.0); }, 2.0},
        {"t/(t^2+9)", [](double t) { return cplx(t / (t * t + 9.0), 0.0); }, 1.0},
    };
    double worst = 0.0;
    for (const auto& c : family) {
        auto f = SampledLineFunction::tabulate(c.f, K, n, c.decay);
        SampledLineFunction tf = f;
        tf.decay_exponent = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            tf.values[j] = cauchy_project(f, cplx(f.nodes[j], 0.0), Side::principal);

        // probe on nodes within |k| <= 20
        double acc[5] = {0, 0, 0, 0, 0};
        int cnt = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double k = f.nodes[j];
            if (std::abs(k) > 20.0) continue;
            const cplx z(k, 0.0);
            const cplx fv = f.values[j];
            const cplx t1 = tf.values[j];
            const cplx tt = cauchy_project(tf, z, Side::principal);
            const cplx tp = cauchy_project(f, z, Side::plus);
            const cplx tm = cauchy_project(f, z, Side::minus);
            const cplx ttp = tt + 0.5 * t1;  // T applied to (Tf + f/2)
            const cplx ttm = tt - 0.5 * t1;
            acc[0] += std::norm(tt - 0.25 * fv);
            acc[1] += std::norm(ttp - 0.5 * tp);
            acc[2] += std::norm(ttm + 0.5 * tm);
            acc[3] += std::norm(tp - (t1 + 0.5 * fv));
            acc[4] += std::norm(tm - (t1 - 0.5 * fv));
            ++cnt;
        }
        for (double a : acc) worst = std::max(worst, std::sqrt(a / double(cnt)));
    }
    rep.params["route"] = "PV singularity subtraction with power-law tails";
    rep.values["max_l2_defect"] = worst;
    rep.residual = worst;
    rep.tolerance = tol(sh.cfg, 5e-3);
}

void check_kernel_roots(CheckReport& rep, Shared& sh) {
    RKernel ker{3.0};
    const auto roots = solve_roots(1000, ker, true);
    double max_res = 0.0, c_phi = 0.0, c_dbeta = 0.0;
    int violations = 0;
    double prev_beta = 0.0, prev_defect = 1e9;
    for (const auto& r : roots) {
        max_res = std::max(max_res, r.residual);
        if (r.beta <= prev_beta) ++violations;  // beta_n must increase
        prev_beta = r.beta;
        const double defect = std::abs(r.beta - std::log(2.0 * kPi * r.n));
        if (r.n >= 10) {
            if (defect > prev_defect + 1e-12) ++violations;
            prev_defect = defect;
        }
        if (r.n >= 2) {
            const double ln_n = std::log(double(r.n));
            c_phi = std::max(c_phi, std::abs(r.phi - kPi) * double(r.n) / ln_n);
            c_dbeta = std::max(c_dbeta,
                               std::abs(r.dbeta_da) * double(r.n) * double(r.n) / ln_n);
        }
    }
    if (c_phi >= 10.0) ++violations;
    rep.params["route"] = "damped Newton on the angle-reduced root equation";
    rep.values["max_abs_R"] = max_res;
    rep.values["c_phi"] = c_phi;
    rep.values["c_dbeta"] = c_dbeta;
    rep.values["violations"] = violations;
    rep.residual = max_res + double(violations);
    rep.tolerance = tol(sh.cfg, 1e-12);
}

void check_rh_solve(CheckReport& rep, Shared& sh) {
    RKernel ker{3.0};
    const auto& fac = sh.fac(3.0, 2000.0, std::size_t(1) << 16);
    const double K = 200.0;
    const std::size_t n = 1 << 13;
    auto G = SampledLineFunction::tabulate(
        [](double t) { return cplx(1.0 / (t * t + 4.0), 0.0); }, K, n, 2.0);

    std::vector<double> k_grid;
    std::vector<std::size_t> k_idx;
    for (std::size_t j = 0; j < n; j += 16) {
        if (std::abs(G.nodes[j]) <= 20.0) {
            k_grid.push_back(G.nodes[j]);
            k_idx.push_back(j);
        }
    }
    auto [psi_p, psi_m] = solve_RH(G, fac, k_grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const cplx r = R_eval(cplx(k_grid[i], 0.0), ker);
        worst = std::max(worst, std::abs(psi_m[i] - r * psi_p[i] - G.values[k_idx[i]]));
    }

    auto G0 = G;
    for (auto& v : G0.values) v = 0.0;
    auto [hp, hm] = solve_RH(G0, fac, k_grid);
    double hom = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i)
        hom = std::max({hom, std::abs(hp[i]), std::abs(hm[i])});

    rep.params["route"] = "Plemelj formulas on G/R with factorization prefactors";
    rep.values["jump_residual"] = worst;
    rep.values["homogeneous_max"] = hom;
    rep.residual = std::max(worst, hom);
    rep.tolerance = tol(sh.cfg, 5e-3);
}

void check_residue_series(CheckReport& rep, Shared& sh) {
    RKernel ker{3.0};
    const auto& fac = sh.fac(3.0, 5200.0, std::size_t(1) << 17);
    const int N = 500;
    const auto roots = all_upper_roots(N, ker);
    auto G = [](cplx z) { return 1.0 / ((z + 2.0 * kI) * (z + 2.0 * kI)); };
    std::vector<cplx> g_vals(roots.size());
    for (std::size_t j = 0; j < roots.size(); ++j) g_vals[j] = G(roots[j]);
    const cplx k(3.0, -2.0);
    const auto series = residue_series_I1(k, g_vals, roots, fac);

    // direct quadrature of the same contour integral on the line
    cplx quad = 0.0;
    const auto& nodes = fac.log_r.nodes;
    const double h = fac.log_r.spacing();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double w = (j == 0 || j + 1 == nodes.size()) ? 0.5 * h : h;
        const cplx t(nodes[j], 0.0);
        quad += w * G(t) / (R_eval(t, ker) * (t - k));
    }
    quad /= 2.0 * kPi * kI;

    rep.params["route"] = "upper-half-plane root expansion vs line trapezoid";
    rep.values["series_re"] = series.value.real();
    rep.values["series_im"] = series.value.imag();
    rep.values["quad_re"] = quad.real();
    rep.values["quad_im"] = quad.imag();
    rep.values["tail_estimate"] = series.tail_estimate;
    rep.residual = std::abs(series.value - quad);
    rep.tolerance = tol(sh.cfg, 1e-3);
}

StripSegment make_segment(Shared& sh, int rect_index, double frac, std::size_t n_nodes) {
    const auto& rect = sh.rect(rect_index);
    const auto excl = sh.exclusions();
    QmOptions opts;
    opts.table = &sh.small_table();
    opts.exclusions = excl;
    MollifierParams mp;
    mp.epsilon = sh.cfg.epsilon;
    const double alpha = rect.center_line + frac * (rect.im_hi - rect.center_line);
    const auto ctx = make_reflection_context(alpha, excl);
    return build_segment(rect, alpha, sh.cfg.m_value, opts, ctx, mp, n_nodes);
}

void check_fourier_reflection(CheckReport& rep, Shared& sh) {
    const auto seg = make_segment(sh, sh.cfg.rectangle_indices.front(), 0.45, 1 << 12);
    double worst = 0.0;
    for (double k = -20.0; k <= 20.0 + 1e-9; k += 0.5)
        worst = std::max(worst, reflection_fourier_residual(seg, k));
    rep.params["route"] = "windowed trapezoid transforms of branch-matched segments";
    rep.values["alpha"] = seg.alpha;
    rep.values["max_residual"] = worst;
    rep.residual = worst;
    rep.tolerance = tol(sh.cfg, 1e-6);
}

void check_fourier_decay(CheckReport& rep, Shared& sh) {
    const auto seg = make_segment(sh, sh.cfg.rectangle_indices.front(), 0.45, 1 << 12);
    const auto norms = q_norms(seg);
    StripSegment mirror_seg = seg;
    mirror_seg.q = seg.q_mirror;
    const auto mirror_norms = q_norms(mirror_seg);
    double worst = 0.0;
    for (double Y : {10.0, 100.0, 1000.0}) {
        const double bi = std::abs(transform_I(seg, cplx(0.0, -Y)));
        const double bj = std::abs(transform_J(seg, cplx(0.0, Y)));
        worst = std::max(worst, bi - norms.l2 / std::sqrt(Y));
        worst = std::max(worst, bj - mirror_norms.l2 / std::sqrt(Y));
    }
    rep.params["route"] = "half-plane transforms vs L2 decay bound";
    rep.values["l2"] = norms.l2;
    rep.values["excess"] = worst;
    rep.residual = std::max(worst, 0.0);
    rep.tolerance = tol(sh.cfg, 1e-12);
}

void check_fourier_inversion(CheckReport& rep, Shared& sh) {
    const auto seg = make_segment(sh, sh.cfg.rectangle_indices.front(), 0.45, 1 << 12);
    const double e = seg.epsilon;
    const std::vector<double> probes = {0.25, 0.5 + 3.5 * e, 0.75, 1.0 - 4.0 * e};
    std::vector<double> errs;
    double worst_rise = -1e300;
    double prev = 0.0;
    for (int d = 0; d < 4; ++d) {
        const double N = 200.0 * std::pow(2.0, d);
        const double err = inversion_check(seg, N, probes);
        if (d > 0) worst_rise = std::max(worst_rise, err - prev);
        errs.push_back(err);
        prev = err;
    }
    rep.params["route"] = "finite-window inverse transform at plateau probes";
    for (std::size_t i = 0; i < errs.size(); ++i)
        rep.values["err_N" + std::to_string(200 << i)] = errs[i];
    rep.residual = std::max(worst_rise, 0.0);
    rep.tolerance = tol(sh.cfg, 1e-12);
}

void check_fourier_parseval(CheckReport& rep, Shared& sh) {
    const auto seg = make_segment(sh, sh.cfg.rectangle_indices.front(), 0.45, 1 << 12);
    const auto norms = q_norms(seg);
    const double K = 200.0, dk = 0.05;
    double energy = 0.0;
    const std::size_t n_k = std::size_t(2.0 * K / dk) + 1;
    for (std::size_t i = 0; i < n_k; ++i) {
        const double k = -K + 2.0 * K * double(i) / double(n_k - 1);
        const double w = (i == 0 || i + 1 == n_k) ? 0.5 : 1.0;
        energy += w * std::norm(transform_I(seg, cplx(k, 0.0)));
    }
    energy *= 2.0 * K / double(n_k - 1);
    const double ratio = std::sqrt(energy) / norms.l2;
    rep.params["route"] = "discrete transform energy vs segment L2";
    rep.values["ratio"] = ratio;
    rep.residual = std::abs(ratio - 1.0);
    rep.tolerance = tol(sh.cfg, 0.02);
}

void check_q_norms_stability(CheckReport& rep, Shared& sh) {
    const int idx = sh.cfg.rectangle_indices.front();
    const auto coarse = q_norms(make_segment(sh, idx, 0.45, 1 << 11));
    const auto fine = q_norms(make_segment(sh, idx, 0.45, 1 << 12));
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-30); };
    const double worst = std::max({rel(coarse.l1, fine.l1), rel(coarse.l2, fine.l2),
                                   rel(coarse.sup, fine.sup)});
    // profile of the sup norm while alpha approaches the zero ordinate
    double prev_sup = 0.0;
    int non_monotone = 0;
    for (double frac : {0.30, 0.25, 0.20, 0.15, 0.10}) {
        const double sup = q_norms(make_segment(sh, idx, frac, 1 << 10)).sup;
        if (sup <= prev_sup) ++non_monotone;
        prev_sup = sup;
    }
    rep.params["route"] = "mesh-doubling and zero-approach profiles of segment norms";
    rep.values["mesh_rel_change"] = worst;
    rep.values["approach_non_monotone"] = non_monotone;
    rep.residual = worst + double(non_monotone);
    rep.tolerance = tol(sh.cfg, 0.01);
}

void check_chernoff(CheckReport& rep, Shared& sh) {
    const cplx c1 = chernoff_C(cplx(3.0, 0.0), 2000).value;
    const cplx c2 = chernoff_C(cplx(3.0, 0.0), 100000).value;
    const double stability = std::abs(c1 - c2);
    const double mod2 = std::abs(chernoff_C(cplx(2.0, 0.0), 50000).value);
    rep.params["route"] = "log-product partial sums under cutoff doubling";
    rep.values["stability"] = stability;
    rep.values["abs_at_2"] = mod2;
    rep.residual = stability + (mod2 > 1.0 ? 0.0 : 1.0);
    rep.tolerance = tol(sh.cfg, 1e-9);
}

void check_blowup(CheckReport& rep, Shared& sh) {
    const std::vector<double> deltas = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    double worst = 0.0;
    for (int zero_index : {1, 2, 3}) {
        const auto sub = blowup_probe(zero_index, deltas, sh.cfg.m_value);
        worst = std::max(worst, sub.residual);
        rep.values["slope_zero" + std::to_string(zero_index)] = sub.values.at("slope");
    }
    const auto control = blowup_probe(1, deltas, sh.cfg.m_value, 0.35);
    rep.params["route"] = "|ln|zeta|| along diagonal approaches; off-zero control";
    rep.values["control_max"] = control.values.at("max_profile");
    rep.residual = worst + (control.pass ? 0.0 : 1.0);
    rep.tolerance = tol(sh.cfg, 1e-12);
}

using CheckFn = void (*)(CheckReport&, Shared&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"blowup-mechanism", check_blowup},
        {"chernoff-stability", check_chernoff},
        {"fourier-decay", check_fourier_decay},
        {"fourier-inversion", check_fourier_inversion},
        {"fourier-parseval", check_fourier_parseval},
        {"fourier-reflection", check_fourier_reflection},
        {"functional-equation", check_functional_equation},
        {"index-factorization", check_index_factorization},
        {"kernel-roots", check_kernel_roots},
        {"mobius-cross-route", check_mobius_cross_route},
        {"mollifier-lemmas", check_mollifier},
        {"projection-identities", check_projection_identities},
        {"q-norms-stability", check_q_norms_stability},
        {"reflection-identity", check_reflection_identity},
        {"residue-series", check_residue_series},
        {"rh-jump", check_rh_solve},
        {"telescoping", check_telescoping},
        {"zero-location", check_zero_location},
    };
    return reg;
}

CheckReport run_one(const std::string& id, CheckFn fn, Shared& sh) {
    CheckReport rep;
    rep.id = id;
    const auto start = std::chrono::steady_clock::now();
    try {
        fn(rep, sh);
        rep.pass = rep.residual <= rep.tolerance;
    } catch (const std::exception& e) {
        rep.pass = false;
        rep.residual = std::numeric_limits<double>::infinity();
        rep.params["error"] = e.what();
    }
    rep.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

}  // namespace

void SuiteConfig::validate() const {
    if (tol_scale < 0.0) throw DomainError("SuiteConfig: tol_scale must be >= 0");
    if (jobs < 1) throw DomainError("SuiteConfig: jobs must be >= 1");
    if (!(zero_scan_lo > 0.0 && zero_scan_lo < zero_scan_hi && zero_scan_hi <= 100.0))
        throw DomainError("SuiteConfig: zero scan range must sit inside (0, 100]");
    if (!(zero_scan_step > 0.0 && zero_scan_step <= 0.05))
        throw DomainError("SuiteConfig: zero_scan_step must be in (0, 0.05]");
    if (m_value < 1 || m_value > 1000) throw DomainError("SuiteConfig: m out of range");
    if (!(epsilon > 0.0 && epsilon < 0.125))
        throw DomainError("SuiteConfig: epsilon must lie in (0, 1/8)");
    if (sieve_limit < 1000) throw DomainError("SuiteConfig: sieve_limit too small");
    if (k_window <= 0.0 || k_window > 1000.0)
        throw DomainError("SuiteConfig: k_window out of range");
    for (double a : a_values)
        if (!(a > 2.0)) throw DomainError("SuiteConfig: kernel parameters need a > 2");
}

void SuiteConfig::set(const std::string& key, const std::string& value) {
    try {
        if (key == "tol_scale") tol_scale = std::stod(value);
        else if (key == "seed") seed = std::stoull(value);
        else if (key == "jobs") jobs = std::stoi(value);
        else if (key == "zero_scan_lo") zero_scan_lo = std::stod(value);
        else if (key == "zero_scan_hi") zero_scan_hi = std::stod(value);
        else if (key == "zero_scan_step") zero_scan_step = std::stod(value);
        else if (key == "m") m_value = std::stoi(value);
        else if (key == "epsilon") epsilon = std::stod(value);
        else if (key == "k_window") k_window = std::stod(value);
        else if (key == "sieve_limit") sieve_limit = std::stoull(value);
        else if (key == "out_dir") out_dir = value;
        else if (key == "rectangles") {
            rectangle_indices.clear();
            for (const auto& s : split_list(value)) rectangle_indices.push_back(std::stoi(s));
        } else if (key == "a_values") {
            a_values.clear();
            for (const auto& s : split_list(value)) a_values.push_back(std::stod(s));
        } else if (key == "only") {
            only = split_list(value);
        } else {
            throw DomainError("SuiteConfig: unknown key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw DomainError("SuiteConfig: bad value '" + value + "' for key '" + key + "'");
    }
}

SuiteConfig SuiteConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("SuiteConfig::load: cannot open " + path);
    SuiteConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) cfg.set(key, value);
    }
    return cfg;
}

std::vector<std::string> registered_checks() {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
}

CheckReport run_single_check(const std::string& id, const SuiteConfig& cfg) {
    cfg.validate();
    Shared sh(cfg);
    for (const auto& [name, fn] : registry())
        if (name == id) return run_one(name, fn, sh);
    throw DomainError("run_single_check: unknown check '" + id + "'");
}

std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    Shared sh(cfg);
    std::vector<std::pair<std::string, CheckFn>> selected;
    for (const auto& entry : registry()) {
        if (cfg.only.empty() ||
            std::find(cfg.only.begin(), cfg.only.end(), entry.first) != cfg.only.end())
            selected.push_back(entry);
    }

    std::vector<CheckReport> reports(selected.size());
    if (cfg.jobs <= 1) {
        for (std::size_t i = 0; i < selected.size(); ++i)
            reports[i] = run_one(selected[i].first, selected[i].second, sh);
    } else {
        std::size_t next = 0;
        std::mutex qmu;
        auto worker = [&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard lk(qmu);
                    if (next >= selected.size()) return;
                    i = next++;
                }
                reports[i] = run_one(selected[i].first, selected[i].second, sh);
            }
        };
        std::vector<std::future<void>> pool;
        for (int j = 0; j < cfg.jobs; ++j)
            pool.push_back(std::async(std::launch::async, worker));
        for (auto& f : pool) f.get();
    }
    std::sort(reports.begin(), reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
    return reports;
}

CheckReport blowup_probe(int zero_index, const std::vector<double>& deltas, int m,
                         double control_offset) {
    if (zero_index < 1 || zero_index > 10)
        throw DomainError("blowup_probe: zero_index must be in [1, 10]");
    if (deltas.size() < 5) throw DomainError("blowup_probe: need at least 5 deltas");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 1e-6 && deltas[i] < 1e-1 + 1e-12))
            throw DomainError("blowup_probe: deltas must lie in (1e-6, 1e-1]");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw DomainError("blowup_probe: deltas must be strictly descending");
    }

    static std::vector<ZeroRecord> cache;
    static std::mutex cache_mu;
    {
        std::lock_guard lk(cache_mu);
        if (cache.empty()) cache = scan_zeros(10.0, 50.0, 0.02);
    }
    const double ordinate = cache[std::size_t(zero_index) - 1].ordinate + control_offset;

    CheckReport rep;
    rep.id = "blowup-probe-zero" + std::to_string(zero_index);
    rep.params["route"] = "|ln|zeta|| along a diagonal approach";
    rep.params["m"] = std::to_string(m);
    if (control_offset != 0.0) rep.params["control"] = "true";

    std::vector<double> profile;
    for (double d : deltas) {
        const cplx s(0.5 + d, ordinate - d);
        profile.push_back(std::abs(std::log(std::abs(eval_zeta(s)))));
    }
    double min_rise = 1e300, max_profile = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        max_profile = std::max(max_profile, profile[i]);
        if (i > 0) min_rise = std::min(min_rise, profile[i] - profile[i - 1]);
    }
    // growth-rate fit: profile against ln(1/delta)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double x = std::log(1.0 / deltas[i]);
        sx += x;
        sy += profile[i];
        sxx += x * x;
        sxy += x * profile[i];
    }
    const double nn = double(profile.size());
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);

    rep.values["max_profile"] = max_profile;
    rep.values["min_rise"] = min_rise;
    rep.values["slope"] = slope;
    for (std::size_t i = 0; i < profile.size(); ++i)
        rep.values["step" + std::to_string(i)] = profile[i];
    if (control_offset != 0.0) {
        rep.residual = max_profile;
        rep.tolerance = 5.0;
    } else {
        rep.residual = std::max(-min_rise, 0.0);
        rep.tolerance = 1e-12;
    }
    rep.pass = rep.residual <= rep.tolerance;
    return rep;
}

namespace {

json report_to_json(const CheckReport& r) {
    json j;
    j["id"] = r.id;
    j["params"] = r.params;
    j["values"] = r.values;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

}  // namespace

void export_reports_json(const std::vector<CheckReport>& reports, const std::string& path) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    std::ofstream os(path);
    if (!os) throw std::runtime_error("export_reports_json: cannot open " + path);
    os << arr.dump(2) << "\n";
}

void export_reports_csv(const std::vector<CheckReport>& reports, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("export_reports_csv: cannot open " + path);
    os << "id,residual,tolerance,pass,runtime_ms,params,values\n";
    char buf[128];
    for (const auto& r : reports) {
        os << r.id << ',';
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,", r.residual, r.tolerance,
                      int(r.pass), r.runtime_ms);
        os << buf << '"';
        bool first = true;
        for (const auto& [k, v] : r.params) {
            os << (first ? "" : ";") << k << '=' << v;
            first = false;
        }
        os << "\",\"";
        first = true;
        for (const auto& [k, v] : r.values) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << (first ? "" : ";") << k << '=' << buf;
            first = false;
        }
        os << "\"\n";
    }
}

std::vector<CheckReport> import_reports_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("import_reports_json: cannot open " + path);
    json arr = json::parse(is);
    std::vector<CheckReport> out;
    for (const auto& j : arr) {
        CheckReport r;
        r.id = j.at("id").get<std::string>();
        r.params = j.at("params").get<std::map<std::string, std::string>>();
        r.values = j.at("values").get<std::map<std::string, double>>();
        r.residual = j.at("residual").get<double>();
        r.tolerance = j.at("tolerance").get<double>();
        r.pass = j.at("pass").get<bool>();
        r.runtime_ms = j.at("runtime_ms").get<double>();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace critstrip
