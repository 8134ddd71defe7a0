#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "critstrip/zeros.hpp"
#include "oracles.hpp"

using namespace critstrip;

namespace {
const std::vector<ZeroRecord>& scanned() {
    static const auto zs = scan_zeros(10.0, 35.0, 0.02);
    return zs;
}
}  // namespace

TEST_CASE("critical-line phase matches its asymptotic expansion") {
    for (double t : {12.0, 20.0, 35.0, 50.0})
        CHECK(std::abs(rs_theta(t) - oracles::theta_phase(t)) < 1e-8);
}

TEST_CASE("rotated signal vanishes at a known ordinate and is real-analytic-looking") {
    CHECK(std::abs(hardy_Z(oracles::kZeroOrdinates[0])) < 1e-9);
    CHECK(std::abs(hardy_Z(15.0)) > 0.1);
}

TEST_CASE("zero scan finds the known ordinates with clean brackets") {
    const auto& zs = scanned();
    REQUIRE(zs.size() == 5);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        CHECK(std::abs(zs[i].ordinate - oracles::kZeroOrdinates[i]) < 1e-8);
        CHECK(zs[i].index == int(i) + 1);
        CHECK(zs[i].bracket_lo < zs[i].ordinate);
        CHECK(zs[i].bracket_hi > zs[i].ordinate);
        CHECK(zs[i].multiplicity == 1);
        CHECK(zs[i].residual < 1e-6);
    }
}

TEST_CASE("scan preconditions") {
    CHECK_THROWS_AS(scan_zeros(-1.0, 10.0), DomainError);
    CHECK_THROWS_AS(scan_zeros(10.0, 200.0), DomainError);
    CHECK_THROWS_AS(scan_zeros(10.0, 20.0, 0.5), DomainError);
}

TEST_CASE("winding counter: simple zero, no zero, multiple zero") {
    const cplx c(0.3, 0.2);
    CHECK(winding_count([c](cplx z) { return z - c; }, c, 0.1, 256) == 1);
    CHECK(winding_count([c](cplx z) { return (z - c) * (z - c); }, c, 0.1, 256) == 2);
    CHECK(winding_count([](cplx z) { return z + cplx(5.0, 0.0); }, c, 0.1, 256) == 0);
}

TEST_CASE("zero-free rectangles are geometrically consistent") {
    const auto& zs = scanned();
    const double eps = 0.06;
    const auto r = build_rectangle(zs, 2, eps);
    CHECK(r.n == 2);
    CHECK(r.re_lo == doctest::Approx(eps));
    CHECK(r.re_hi == doctest::Approx(1.0 - eps));
    CHECK(r.center_line == doctest::Approx(zs[1].ordinate));
    const double half_gap = 0.5 * (zs[2].ordinate - zs[1].ordinate);
    CHECK(r.im_lo == doctest::Approx(zs[1].ordinate - half_gap));
    CHECK(r.im_hi == doctest::Approx(zs[1].ordinate + half_gap));
    CHECK(r.mirror_im_hi == doctest::Approx(-r.im_lo));
    CHECK(r.grid_min_abs_zeta > 0.0);
    CHECK_THROWS_AS(build_rectangle(zs, 99, eps), DomainError);
}

TEST_CASE("zero table CSV round trip") {
    const auto& zs = scanned();
    const auto path =
        (std::filesystem::temp_directory_path() / "critstrip_zeros_test.csv").string();
    save_zeros_csv(zs, path);
    const auto back = load_zeros_csv(path);
    REQUIRE(back.size() == zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        CHECK(back[i].ordinate == zs[i].ordinate);
        CHECK(back[i].multiplicity == zs[i].multiplicity);
    }
    std::remove(path.c_str());
}
