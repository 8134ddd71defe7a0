#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "critstrip/harness.hpp"

using namespace critstrip;

namespace {

std::string data_dir(const std::string& out_dir) {
    if (const char* env = std::getenv("CRITICAL_STRIP_DATA")) return env;
    return out_dir;
}

const PrimeTable& cached_table(std::uint64_t limit, const std::string& out_dir) {
    static PrimeTable table;
    if (table.limit >= limit) return table;
    const auto path = std::filesystem::path(data_dir(out_dir)) /
                      ("primes_" + std::to_string(limit) + ".txt");
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        table = PrimeTable::load(path.string());
        if (table.limit >= limit) return table;
    }
    table = PrimeTable::sieve(limit);
    std::filesystem::create_directories(path.parent_path(), ec);
    table.save(path.string());
    return table;
}

int cmd_eval(const std::string& fn, double re, double im, const SuiteConfig& cfg) {
    const cplx s(re, im);
    cplx v;
    if (fn == "zeta") v = eval_zeta(s);
    else if (fn == "log_gamma") v = eval_log_gamma(s);
    else if (fn == "completed_zeta") v = completed_zeta(s).via_factors;
    else if (fn == "prime_zeta") v = prime_zeta_continued(s, TruncationPolicy{});
    else if (fn == "prime_zeta_direct")
        v = prime_zeta_direct(s, cached_table(cfg.sieve_limit, cfg.out_dir), 1e-10).value;
    else if (fn == "F") v = F_factor(s);
    else if (fn == "hardy_Z") v = cplx(hardy_Z(re), 0.0);
    else if (fn == "theta") v = cplx(rs_theta(re), 0.0);
    else if (fn == "mu") {
        MollifierParams p;
        p.epsilon = cfg.epsilon;
        v = cplx(mu(re, p), 0.0);
    } else if (fn == "R") v = R_eval(s, RKernel{3.0});
    else {
        std::cerr << "eval: unknown function '" << fn << "'\n"
                  << "known: zeta log_gamma completed_zeta prime_zeta "
                     "prime_zeta_direct F hardy_Z theta mu R\n";
        return 2;
    }
    std::printf("%s(%.17g%+.17gi) = %.17g %+.17gi\n", fn.c_str(), re, im, v.real(),
                v.imag());
    return 0;
}

int cmd_zeros(const SuiteConfig& cfg) {
    const auto zeros = scan_zeros(cfg.zero_scan_lo, cfg.zero_scan_hi, cfg.zero_scan_step);
    for (const auto& z : zeros)
        std::printf("%4d  t = %.12f  mult = %d  |zeta| = %.3e%s\n", z.index, z.ordinate,
                    z.multiplicity, z.residual, z.step_warning ? "  [step warning]" : "");
    const auto path = std::filesystem::path(cfg.out_dir) / "zeros.csv";
    save_zeros_csv(zeros, path.string());
    std::printf("wrote %s (%zu zeros)\n", path.string().c_str(), zeros.size());
    return 0;
}

int cmd_rects(const SuiteConfig& cfg) {
    const auto zeros = scan_zeros(cfg.zero_scan_lo, cfg.zero_scan_hi, cfg.zero_scan_step);
    for (int n : cfg.rectangle_indices) {
        const auto r = build_rectangle(zeros, n, cfg.epsilon);
        std::printf(
            "rect %d: Re in [%.4f, %.4f], Im in [%.6f, %.6f], center line %.6f, "
            "interior min |zeta| = %.3e\n",
            r.n, r.re_lo, r.re_hi, r.im_lo, r.im_hi, r.center_line, r.grid_min_abs_zeta);
    }
    return 0;
}

int cmd_rh(const SuiteConfig& cfg) {
    int worst = 0;
    for (double a : cfg.a_values) {
        RKernel ker{a};
        const int ind = index_R(ker, 1000.0);
        const auto fac = factorize(ker);
        double dp = 0.0, dm = 0.0;
        for (double k = -cfg.k_window; k <= cfg.k_window + 1e-9; k += 1.0) {
            dp = std::max(dp, std::abs(fac.x_plus(k) - 1.0));
            dm = std::max(dm, std::abs(fac.x_minus(k) - R_eval(cplx(k, 0.0), ker)));
        }
        std::printf("a = %.3g: index = %d, sup|X+ - 1| = %.3e, sup|X- - R| = %.3e\n", a,
                    ind, dp, dm);
        if (ind != 0) worst = 1;
    }
    const auto roots = solve_roots(20, RKernel{3.0}, true);
    const auto path = std::filesystem::path(cfg.out_dir) / "roots.csv";
    save_roots_csv(roots, path.string());
    std::printf("wrote %s (first %zu kernel roots, a = 3)\n", path.string().c_str(),
                roots.size());
    return worst;
}

int cmd_suite(const SuiteConfig& cfg) {
    const auto reports = run_suite(cfg);
    bool all_pass = true;
    for (const auto& r : reports) {
        std::printf("%-24s %s   residual = %-12.4e tol = %-10.2e (%.0f ms)\n",
                    r.id.c_str(), r.pass ? "PASS" : "FAIL", r.residual, r.tolerance,
                    r.runtime_ms);
        all_pass = all_pass && r.pass;
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    const auto jpath = std::filesystem::path(cfg.out_dir) / "reports.json";
    const auto cpath = std::filesystem::path(cfg.out_dir) / "reports.csv";
    export_reports_json(reports, jpath.string());
    export_reports_csv(reports, cpath.string());
    std::printf("wrote %s and %s\n", jpath.string().c_str(), cpath.string().c_str());
    return all_pass ? 0 : 1;
}

int cmd_export(const std::string& in, const std::string& format, const SuiteConfig& cfg) {
    const auto reports = import_reports_json(in);
    const auto path = std::filesystem::path(cfg.out_dir) /
                      ("reports_export." + format);
    if (format == "json") export_reports_json(reports, path.string());
    else if (format == "csv") export_reports_csv(reports, path.string());
    else {
        std::cerr << "export: format must be json or csv\n";
        return 2;
    }
    std::printf("wrote %s (%zu reports)\n", path.string().c_str(), reports.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical-strip numerical check suite"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    double tol_scale = -1.0;
    int jobs = 0;
    long long seed = -1;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--tol-scale", tol_scale, "scale every tolerance");
    app.add_option("--jobs", jobs, "worker threads for the suite");
    app.add_option("--seed", seed, "RNG seed for sampled checks");

    auto* eval = app.add_subcommand("eval", "evaluate a function at a point");
    std::string fn = "zeta";
    double re = 0.5, im = 0.0;
    eval->add_option("function", fn, "function name");
    eval->add_option("re", re, "real part");
    eval->add_option("im", im, "imaginary part");

    auto* zeros = app.add_subcommand("zeros", "scan critical-line zeros");
    auto* rects = app.add_subcommand("rects", "build zero-free rectangles");
    auto* rh = app.add_subcommand("rh", "kernel factorization, roots, index");
    auto* suite = app.add_subcommand("suite", "run every registered check");
    std::string only;
    suite->add_option("--only", only, "comma-separated check ids");

    auto* exp = app.add_subcommand("export", "re-export a JSON report file");
    std::string in_path, format = "csv";
    exp->add_option("input", in_path, "reports JSON path")->required();
    exp->add_option("--format", format, "json or csv");

    CLI11_PARSE(app, argc, argv);

    try {
        SuiteConfig cfg;
        if (!config_path.empty()) cfg = SuiteConfig::load(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (tol_scale >= 0.0) cfg.tol_scale = tol_scale;
        if (jobs > 0) cfg.jobs = jobs;
        if (seed >= 0) cfg.seed = std::uint64_t(seed);
        if (!only.empty()) cfg.set("only", only);
        cfg.validate();

        if (eval->parsed()) return cmd_eval(fn, re, im, cfg);
        if (zeros->parsed()) return cmd_zeros(cfg);
        if (rects->parsed()) return cmd_rects(cfg);
        if (rh->parsed()) return cmd_rh(cfg);
        if (suite->parsed()) return cmd_suite(cfg);
        if (exp->parsed()) return cmd_export(in_path, format, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
