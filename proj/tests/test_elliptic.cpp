#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "wkb/elliptic.hpp"

using testsupport::fd_derivative;
using testsupport::rel_err;
using wkb::EllipticData;
using wkb::elliptic_setup;
using wkb::wp_shifted;

TEST_CASE("reference lattice g2=28, g3=-24", "[elliptic]") {
    const EllipticData ed = elliptic_setup(28.0, -24.0);
    // exact integer roots and discriminant
    CHECK(ed.e1 == 2.0);
    CHECK(ed.e2 == 1.0);
    CHECK(ed.e3 == -3.0);
    CHECK(ed.delta == 6400.0);
    // half-period pinned against a 25-digit AGM reference
    CHECK_THAT(ed.omega1, Catch::Matchers::WithinRel(1.00945290998921160779, 1e-14));
    CHECK(ed.omega3_im > 0.0);
}

TEST_CASE("root invariants on random positive-discriminant inputs", "[elliptic]") {
    testsupport::Rng rng(7);
    int kept = 0;
    while (kept < 40) {
        const double g2 = rng.uniform(0.5, 60.0);
        const double g3 = rng.uniform(-25.0, 25.0);
        if (!(g2 * g2 * g2 - 27.0 * g3 * g3 > 1e-6)) continue;
        ++kept;
        const EllipticData ed = elliptic_setup(g2, g3);
        REQUIRE(ed.e1 > ed.e2);
        REQUIRE(ed.e2 > ed.e3);
        REQUIRE(std::abs(ed.e1 + ed.e2 + ed.e3) < 1e-12);
        const double bound = 1e-10 * std::max({1.0, std::abs(g2), std::abs(g3)});
        for (double e : {ed.e1, ed.e2, ed.e3})
            REQUIRE(std::abs(((4.0 * e) * e - g2) * e - g3) < bound);
        REQUIRE(ed.omega1 > 0.0);
        REQUIRE(ed.omega3_im > 0.0);
    }
}

TEST_CASE("shifted Weierstrass function: range, symmetry, periodicity", "[elliptic]") {
    const EllipticData ed = elliptic_setup(28.0, -24.0);
    CHECK(wp_shifted(0.0, ed) == ed.e3);
    CHECK(rel_err(wp_shifted(ed.omega1, ed), ed.e2) < 1e-13);
    for (double x : testsupport::linspace(-3.0, 3.0, 41)) {
        const double g = wp_shifted(x, ed);
        REQUIRE(g >= ed.e3 - 1e-12);
        REQUIRE(g <= ed.e2 + 1e-12);
        REQUIRE(std::abs(wp_shifted(-x, ed) - g) < 1e-10);
        REQUIRE(std::abs(wp_shifted(2.0 * ed.omega1 - x, ed) - g) < 1e-10);
        REQUIRE(std::abs(wp_shifted(x + 2.0 * ed.omega1, ed) - g) < 1e-10);
    }
}

TEST_CASE("shifted Weierstrass function satisfies the defining ODE", "[elliptic]") {
    // (g')^2 = 4 g^3 - g2 g - g3, derivative taken by finite differences
    for (auto [g2, g3] : {std::pair{28.0, -24.0}, std::pair{7.0, 1.0}, std::pair{11.0, -2.5}}) {
        const EllipticData ed = elliptic_setup(g2, g3);
        for (double x : {0.2, 0.45, 0.8, 1.3, 1.75}) {
            const double g = wp_shifted(x, ed);
            const double gp = fd_derivative([&](double xx) { return wp_shifted(xx, ed); }, x, 1e-3);
            const double rhs = ((4.0 * g) * g - g2) * g - g3;
            const double scale = std::max(1.0, std::abs(rhs));
            REQUIRE(std::abs(gp * gp - rhs) / scale < 1e-9);
        }
    }
}

TEST_CASE("closed-form derivative of the shifted function", "[elliptic]") {
    for (auto [g2, g3] : {std::pair{28.0, -24.0}, std::pair{7.0, 1.0}}) {
        const EllipticData ed = elliptic_setup(g2, g3);
        // sample both the rising and falling half of a period, and past it
        for (double x : {0.2, 0.45, 0.8, ed.omega1 + 0.3, ed.omega1 + 0.9, 2.0 * ed.omega1 + 0.4,
                         -0.6}) {
            const double want =
                fd_derivative([&](double xx) { return wp_shifted(xx, ed); }, x, 1e-3);
            const double got = wkb::wp_shifted_deriv(x, ed);
            REQUIRE(std::abs(got - want) < 1e-7 * std::max(1.0, std::abs(want)));
        }
        // extrema of the branch: derivative vanishes at 0 and omega1
        REQUIRE(std::abs(wkb::wp_shifted_deriv(0.0, ed)) < 1e-5);
        REQUIRE(std::abs(wkb::wp_shifted_deriv(ed.omega1, ed)) < 1e-5);
    }
}

TEST_CASE("elliptic_setup rejects non-positive discriminants", "[elliptic]") {
    CHECK_THROWS_AS(elliptic_setup(0.0, 1.0), wkb::bad_input);    // delta = -27
    CHECK_THROWS_AS(elliptic_setup(3.0, 1.0), wkb::bad_input);    // delta = 0
    CHECK_THROWS_AS(elliptic_setup(-4.0, 0.1), wkb::bad_input);   // delta < 0
    CHECK_THROWS_AS(elliptic_setup(std::nan(""), 0.0), wkb::bad_input);
}
