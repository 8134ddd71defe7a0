#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "critstrip/fourier.hpp"
#include "oracles.hpp"

using namespace critstrip;

namespace {

struct Fixture {
    PrimeTable table = PrimeTable::sieve(20000);
    ExclusionSet excl;
    std::vector<ZeroRecord> zeros = scan_zeros(10.0, 30.0, 0.02);
    RectangleD rect;
    StripSegment seg;

    Fixture() {
        for (const auto& z : zeros) {
            excl.points.push_back(cplx(0.5, z.ordinate));
            excl.points.push_back(cplx(0.5, -z.ordinate));
        }
        rect = build_rectangle(zeros, 1, 0.06);
        QmOptions opts;
        opts.table = &table;
        opts.exclusions = excl;
        MollifierParams mp;
        const double alpha = rect.center_line + 0.45 * (rect.im_hi - rect.center_line);
        const auto ctx = make_reflection_context(alpha, excl);
        seg = build_segment(rect, alpha, 40, opts, ctx, mp, 1 << 10);
    }
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}
}  // namespace

TEST_CASE("segment construction and mesh bookkeeping") {
    const auto& seg = fx().seg;
    CHECK(seg.tau.front() == doctest::Approx(seg.epsilon));
    CHECK(seg.tau.back() == doctest::Approx(1.0 - seg.epsilon));
    CHECK(seg.mirror(0) == seg.tau.size() - 1);
    // the smoothed window is at half height at the band edges
    MollifierParams mp;
    CHECK(mu(seg.tau.front(), mp) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(mu(seg.tau.back(), mp) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("segment rejects an ordinate on the excluded center line") {
    const auto& f = fx();
    QmOptions opts;
    opts.table = &f.table;
    opts.exclusions = f.excl;
    MollifierParams mp;
    const auto ctx = make_reflection_context(f.rect.im_hi - 0.5, f.excl);
    CHECK_THROWS_AS(
        build_segment(f.rect, f.rect.center_line, 40, opts, ctx, mp, 1 << 8),
        DomainError);
}

TEST_CASE("reflected transform identity holds along the real frequency axis") {
    const auto& seg = fx().seg;
    for (double k : {-15.0, -4.5, 0.0, 3.0, 12.0})
        CHECK(reflection_fourier_residual(seg, k) < 1e-6);
}

TEST_CASE("half-plane transforms obey the L2 decay bound") {
    const auto& seg = fx().seg;
    const auto norms = q_norms(seg);
    CHECK(norms.l2 > 0.0);
    for (double Y : {10.0, 100.0}) {
        CHECK(std::abs(transform_I(seg, cplx(0.0, -Y))) <= norms.l2 / std::sqrt(Y));
    }
    CHECK_THROWS_AS(transform_I(seg, cplx(0.0, 5.0)), DomainError);
    CHECK_THROWS_AS(transform_J(seg, cplx(0.0, -5.0)), DomainError);
}

TEST_CASE("finite-window inversion error shrinks as the window doubles") {
    const auto& seg = fx().seg;
    const std::vector<double> probes = {0.25, 0.75};
    const double e1 = inversion_check(seg, 200.0, probes);
    const double e2 = inversion_check(seg, 400.0, probes);
    CHECK(e2 < e1);
}

TEST_CASE("transform rows persist to CSV") {
    const auto& seg = fx().seg;
    std::vector<TransformRow> rows;
    for (double k : {-1.0, 0.0, 1.0})
        rows.push_back({k, 0.0, transform_I(seg, cplx(k, 0.0)), "I"});
    const auto path =
        (std::filesystem::temp_directory_path() / "critstrip_transforms.csv").string();
    save_transform_csv(rows, path);
    std::ifstream is(path);
    std::string line;
    int count = 0;
    while (std::getline(is, line)) ++count;
    CHECK(count == 4);  // header + 3 rows
    std::remove(path.c_str());
}
