#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "critstrip/fourier.hpp"
#include "critstrip/hilbert.hpp"

namespace critstrip {

struct SuiteConfig {
    double tol_scale = 1.0;
    std::uint64_t seed = 20260826;
    int jobs = 1;
    double zero_scan_lo = 10.0;
    double zero_scan_hi = 50.0;
    double zero_scan_step = 0.02;
    std::vector<int> rectangle_indices = {1, 2, 3};
    int m_value = 40;
    double epsilon = 0.06;
    std::vector<double> a_values = {2.1, 2.5, 3.0, 10.0};
    double k_window = 50.0;
    std::uint64_t sieve_limit = 10'000'000;
    std::string out_dir = ".";
    std::vector<std::string> only;  // restrict to these check ids (empty = all)

    void validate() const;
    void set(const std::string& key, const std::string& value);
    static SuiteConfig load(const std::string& path);  // key=value lines, # comments
};

struct CheckReport {
    std::string id;
    std::map<std::string, std::string> params;  // includes the route of each number
    std::map<std::string, double> values;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
};

// ids of every registered check, sorted
std::vector<std::string> registered_checks();

// run one named check in isolation (rebuilds whatever shared data it needs)
CheckReport run_single_check(const std::string& id, const SuiteConfig& cfg);

// run all (or cfg.only) checks; per-check failures are recorded, never thrown
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

// |ln|zeta|| along a diagonal approach to the zero with the given index;
// pass iff the profile strictly increases over the last 5 steps. A nonzero
// control_offset probes a nearby non-zero point instead (bounded profile,
// reported as the control case).
CheckReport blowup_probe(int zero_index, const std::vector<double>& deltas, int m,
                         double control_offset = 0.0);

void export_reports_json(const std::vector<CheckReport>& reports, const std::string& path);
void export_reports_csv(const std::vector<CheckReport>& reports, const std::string& path);
std::vector<CheckReport> import_reports_json(const std::string& path);

}  // namespace critstrip
