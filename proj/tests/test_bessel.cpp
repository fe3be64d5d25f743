#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "wkb/bessel.hpp"

using testsupport::rel_err;
using wkb::BesselKind;
using wkb::bessel_half;

namespace {
double pref(double x) { return std::sqrt(2.0 / (wkb::pi * x)); }
}  // namespace

TEST_CASE("orders 3/2 and 5/2 match their trigonometric forms", "[bessel]") {
    for (double x : {0.3, 1.0, 2.7, 9.0}) {
        CHECK(rel_err(bessel_half(BesselKind::J, 1, x),
                      pref(x) * (std::sin(x) / x - std::cos(x))) < 1e-13);
        CHECK(rel_err(bessel_half(BesselKind::Y, 1, x),
                      -pref(x) * (std::cos(x) / x + std::sin(x))) < 1e-13);
        CHECK(rel_err(bessel_half(BesselKind::J, 2, x),
                      pref(x) * ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 / x * std::cos(x))) <
              1e-12);
        CHECK(rel_err(bessel_half(BesselKind::Y, 2, x),
                      -pref(x) * ((3.0 / (x * x) - 1.0) * std::cos(x) + 3.0 / x * std::sin(x))) <
              1e-12);
    }
}

TEST_CASE("cross-order product identity at the tabulated points", "[bessel]") {
    // J_{5/2} Y_{3/2} - J_{3/2} Y_{5/2} = 2/(pi x)
    for (double x : {0.7, 1.3, 2.9}) {
        const double w = bessel_half(BesselKind::J, 2, x) * bessel_half(BesselKind::Y, 1, x) -
                         bessel_half(BesselKind::J, 1, x) * bessel_half(BesselKind::Y, 2, x);
        CHECK(rel_err(w, 2.0 / (wkb::pi * x)) < 1e-12);
    }
}

TEST_CASE("Wronskian identity across orders and a wide x range", "[bessel]") {
    // J_{n+1/2} Y_{n-1/2} - J_{n-1/2} Y_{n+1/2} = 2/(pi x)
    for (int n = 0; n <= 5; ++n) {
        for (int i = 0; i < 40; ++i) {
            const double x = 0.1 * std::pow(500.0, i / 39.0);  // log grid on [0.1, 50]
            const double w =
                bessel_half(BesselKind::J, n, x) * bessel_half(BesselKind::Y, n - 1, x) -
                bessel_half(BesselKind::J, n - 1, x) * bessel_half(BesselKind::Y, n, x);
            REQUIRE(rel_err(w, 2.0 / (wkb::pi * x)) < 1e-10);
        }
    }
}

TEST_CASE("agreement with the standard library special functions", "[bessel]") {
    for (int n = 0; n <= 6; ++n) {
        for (double x : {0.1, 0.4, 1.1, 3.0, 7.7, 20.0, 45.0}) {
            const double nu = n + 0.5;
            CHECK(rel_err(bessel_half(BesselKind::J, n, x), std::cyl_bessel_j(nu, x)) < 1e-10);
            CHECK(rel_err(bessel_half(BesselKind::Y, n, x), std::cyl_neumann(nu, x)) < 1e-10);
        }
    }
}

TEST_CASE("negative orders through the half-odd reflection", "[bessel]") {
    for (double x : {0.5, 1.0, 4.2}) {
        // J_{-1/2} = sqrt(2/(pi x)) cos x,  Y_{-1/2} = sqrt(2/(pi x)) sin x
        CHECK(rel_err(bessel_half(BesselKind::J, -1, x), pref(x) * std::cos(x)) < 1e-13);
        CHECK(rel_err(bessel_half(BesselKind::Y, -1, x), pref(x) * std::sin(x)) < 1e-13);
        // J_{-3/2} = +Y_{3/2},  Y_{-3/2} = -J_{3/2}
        CHECK(bessel_half(BesselKind::J, -2, x) == bessel_half(BesselKind::Y, 1, x));
        CHECK(bessel_half(BesselKind::Y, -2, x) == -bessel_half(BesselKind::J, 1, x));
    }
}

TEST_CASE("upward and downward J evaluations agree near the switchover", "[bessel]") {
    for (int n = 1; n <= 6; ++n) {
        const double x_lo = 1.5 * n + 0.999;  // Miller side
        const double x_hi = 1.5 * n + 1.001;  // upward side
        CHECK(rel_err(bessel_half(BesselKind::J, n, x_lo), std::cyl_bessel_j(n + 0.5, x_lo)) <
              1e-11);
        CHECK(rel_err(bessel_half(BesselKind::J, n, x_hi), std::cyl_bessel_j(n + 0.5, x_hi)) <
              1e-11);
    }
}

TEST_CASE("bessel_half input validation", "[bessel]") {
    CHECK_THROWS_AS(bessel_half(BesselKind::J, 1, 0.0), wkb::bad_input);
    CHECK_THROWS_AS(bessel_half(BesselKind::Y, 1, -2.0), wkb::bad_input);
    CHECK_THROWS_AS(bessel_half(BesselKind::J, 1, std::nan("")), wkb::bad_input);
}
