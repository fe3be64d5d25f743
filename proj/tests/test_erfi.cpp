#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "support/oracles.hpp"
#include "wkb/erfi.hpp"
#include "wkb/quadrature.hpp"

using testsupport::rel_err;
using wkb::erfi;

TEST_CASE("erfi basics", "[erfi]") {
    CHECK(erfi(0.0) == 0.0);
    // series evaluation pinned against a 25-digit reference
    CHECK_THAT(erfi(1.0), Catch::Matchers::WithinRel(1.65042575879754288, 1e-15));
}

TEST_CASE("erfi is odd", "[erfi]") {
    for (double x : {0.17, 0.6, 1.3, 2.9, 7.5, 20.0}) {
        CHECK(erfi(-x) == -erfi(x));
    }
}

TEST_CASE("erfi agrees with adaptive quadrature of exp(s^2)", "[erfi]") {
    const auto gauss = [](double s) { return std::exp(s * s); };
    for (double x : {0.25, 0.9, 1.0, 1.7, 2.5, 3.2, 5.0}) {
        const double by_quad = (2.0 / std::sqrt(wkb::pi)) * wkb::integrate(gauss, 0.0, x, 1e-13);
        CHECK(rel_err(erfi(x), by_quad) < 1e-11);
    }
}

TEST_CASE("erfi matches its large-x asymptotic expansion", "[erfi]") {
    // erfi(x) ~ e^{x^2}/(sqrt(pi) x) * sum_k (2k-1)!!/(2x^2)^k
    for (double x : {15.0, 20.0, 25.0}) {
        const double ix2 = 1.0 / (x * x);
        double tail = 0.0, term = 1.0;
        const double dfact[6] = {1.0, 1.0, 3.0, 15.0, 105.0, 945.0};
        for (int k = 0; k < 6; ++k) {
            tail += dfact[k] * term;
            term *= 0.5 * ix2;
        }
        const double asym = std::exp(x * x) / (std::sqrt(wkb::pi) * x) * tail;
        CHECK(rel_err(erfi(x), asym) < 1e-10);
    }
}

TEST_CASE("erfi rejects non-finite input and flags overflow", "[erfi]") {
    CHECK_THROWS_AS(erfi(std::numeric_limits<double>::quiet_NaN()), wkb::bad_input);
    CHECK_THROWS_AS(erfi(std::numeric_limits<double>::infinity()), wkb::bad_input);
    CHECK_THROWS_AS(erfi(27.0), wkb::overflow_error);
    CHECK_THROWS_AS(erfi(-30.0), wkb::overflow_error);
    CHECK(std::isfinite(erfi(26.5)));
}
