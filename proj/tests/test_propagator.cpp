#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "wkb/propagator.hpp"
#include "wkb/variational.hpp"

using namespace wkb;
using testsupport::rel_err;

namespace {

// Frozen from the closed form and confirmed by the integrator:
// the ground-level matrix element at t1 = 1 for the 1 - x^2 coefficient.
constexpr double kGroundPhi12 = 0.887143128374917935;

}  // namespace

TEST_CASE("classical action of the straight path", "[propagator]") {
    CHECK(action(PathSpec{0.0, 2.0, 1.0}) == 2.0);
    CHECK(action(PathSpec{0.0, 2.0, 2.0}) == 1.0);

    // at E = 1/2 the speed is 1, so S = |x1 - x0| / 2
    for (double t1 : {0.3, 1.0, 2.6}) {
        const PathSpec p = path_from_energy(-0.4, t1, 0.5);
        CHECK(rel_err(action(p), std::fabs(p.x1 - p.x0) / 2.0) < 1e-15);
        const PathSpec q = path_from_energy(-0.4, t1, 0.5, -1);
        CHECK(rel_err(action(q), std::fabs(q.x1 - q.x0) / 2.0) < 1e-15);
    }
}

TEST_CASE("Jacobi determinant from the matrix element", "[propagator]") {
    CHECK(van_vleck_det(1.7, 1.7) == 1.7 * 1.7);  // free particle: phi12 = t1
    const double t1 = 0.9, om = 4.0;
    CHECK(rel_err(van_vleck_det(t1, std::sin(2.0 * t1) / 2.0),
                  t1 * std::sin(std::sqrt(om) * t1) / std::sqrt(om)) < 1e-15);
    CHECK(van_vleck_det(2.0, 0.0) == 0.0);
}

TEST_CASE("free-particle prefactor", "[propagator]") {
    const PathSpec p{0.0, 2.0, 2.0};
    const PropagatorValue v = kwkb(p, p.t1);  // phi12 = t1 for c = 0
    CHECK(rel_err(v.modulus, 1.0 / (4.0 * pi)) < 1e-15);
    CHECK(v.det_j == 4.0);
    CHECK(v.action == 1.0);
    CHECK(v.hbar == 1.0);
    CHECK(v.source == Source::ClosedForm);
    CHECK(rel_err(v.phase, 1.0 - pi / 2.0) < 1e-14);
    CHECK(rel_err(v.re, v.modulus * std::cos(v.phase)) < 1e-14);
    CHECK(rel_err(v.im, v.modulus * std::sin(v.phase)) < 1e-14);
}

TEST_CASE("harmonic modulus matches the closed prefactor formula", "[propagator]") {
    const double om = 4.0, t1 = 0.6, hbar = 0.7;
    const PathSpec p{0.0, 1.0, t1};
    const double phi12 = std::sin(std::sqrt(om) * t1) / std::sqrt(om);
    const PropagatorValue v = kwkb(p, phi12, hbar, Source::Oracle);
    const double expected =
        std::pow(om, 0.25) / (2.0 * pi * hbar * std::sqrt(t1 * std::sin(std::sqrt(om) * t1)));
    CHECK(rel_err(v.modulus, expected) < 1e-14);
    CHECK(v.source == Source::Oracle);
}

TEST_CASE("ground-level modulus from the frozen matrix element", "[propagator]") {
    const FamilySpec f = Hermite{1.0};
    const EnergyLevel lv = level_for_energy(f, 0.5);
    const PathSpec p = path_from_energy(0.0, 1.0, 0.5);
    const double phi12 = phi12_closed(f, lv, p);
    CHECK(rel_err(phi12, kGroundPhi12) < 1e-13);
    const PropagatorValue v = kwkb(p, phi12);
    CHECK(rel_err(v.modulus, 1.0 / (2.0 * pi * std::sqrt(p.t1 * kGroundPhi12))) < 1e-12);
    CHECK(rel_err(v.modulus * v.modulus, v.re * v.re + v.im * v.im) < 1e-14);
}

TEST_CASE("phase stays on the principal branch", "[propagator]") {
    const PathSpec p{0.0, 2.0, 1.0};  // S = 2
    for (double hbar : {1.0, 0.37, 0.013, 2.9}) {
        const PropagatorValue v = kwkb(p, 1.0, hbar);
        CHECK(v.phase > -pi);
        CHECK(v.phase <= pi);
        const double drift = std::remainder(v.phase - (v.action / hbar - pi / 2.0), 2.0 * pi);
        CHECK(std::fabs(drift) < 1e-12);
    }
}

TEST_CASE("modulus scaling and monotonicity in det J", "[propagator]") {
    const PathSpec p{0.0, 1.0, 1.3};
    const double phi12 = 0.8;
    const PropagatorValue base = kwkb(p, phi12);
    for (double lam : {2.0, 3.7, 11.0}) {
        const PropagatorValue scaled = kwkb(p, phi12 * lam * lam);
        CHECK(rel_err(scaled.modulus * lam, base.modulus) < 1e-13);
        CHECK(scaled.phase == base.phase);  // phase carries no det J dependence
        CHECK(scaled.action == base.action);
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double dj = 0.1; dj < 20.0; dj *= 1.9) {
        const double mod = kwkb(p, dj / p.t1).modulus;
        CHECK(mod < prev);
        prev = mod;
    }
}

TEST_CASE("crossing a focal point is refused", "[propagator]") {
    const double om = 1.0;
    auto phi12 = [&](double t1) { return std::sin(std::sqrt(om) * t1) / std::sqrt(om); };

    const PathSpec before{0.0, 1.0, pi - 0.01};
    CHECK_NOTHROW(kwkb(before, phi12(before.t1)));

    const PathSpec after{0.0, 1.0, pi + 0.01};
    try {
        kwkb(after, phi12(after.t1));
        FAIL("negative det J must be rejected");
    } catch (const focal_point_error& e) {
        CHECK(std::string(e.what()).find("FocalPointCrossed") != std::string::npos);
    }
    CHECK_THROWS_AS(kwkb(PathSpec{0.0, 1.0, 2.0}, 0.0), focal_point_error);

    CHECK_THROWS_AS(kwkb(before, 1.0, 0.0), bad_input);
    CHECK_THROWS_AS(kwkb(before, 1.0, -2.0), bad_input);
    CHECK_THROWS_AS(kwkb(before, std::nan(""), 1.0), bad_input);
}

TEST_CASE("focal points of the harmonic path", "[propagator]") {
    const FamilySpec f = Constant{1.0};
    const EnergyLevel lv = level_for_energy(f, 0.5);
    const PathSpec p = path_from_energy(0.0, 7.0, 0.5);

    const auto roots = focal_points(f, lv, p, 7.0);
    REQUIRE(roots.size() == 2);
    CHECK(rel_err(roots[0].t, pi) < 1e-9);
    CHECK(rel_err(roots[1].t, 2.0 * pi) < 1e-9);
    for (const auto& fp : roots) {
        CHECK(fp.bracket_lo < fp.t);
        CHECK(fp.t < fp.bracket_hi);
        const double lo = phi12_numeric(f, lv.E, p, fp.bracket_lo);
        const double hi = phi12_numeric(f, lv.E, p, fp.bracket_hi);
        CHECK(lo * hi < 0.0);  // the certificate
    }

    CHECK(focal_points(f, lv, p, 4.0).size() == 1);
}

TEST_CASE("paths without focal points report none", "[propagator]") {
    {
        const FamilySpec f = Constant{0.0};
        const EnergyLevel lv = level_for_energy(f, 0.5);
        CHECK(focal_points(f, lv, path_from_energy(0.0, 5.0, 0.5), 5.0).empty());
    }
    {
        // first excited level: phi12 = t exp(-t^2/6) never returns to zero
        const FamilySpec f = Hermite{1.0};
        const double e1 = admissible_energies(f, 2)[1].E;
        const EnergyLevel lv = level_for_energy(f, e1);
        CHECK(focal_points(f, lv, path_from_energy(0.0, 3.0, e1), 3.0).empty());
    }
}

TEST_CASE("focal point of a doubly periodic path", "[propagator]") {
    const FamilySpec f = Lame{2.0, -4.0, 28.0, -24.0};
    const EnergyLevel lv = level_for_energy(f, 0.5);
    const PathSpec p = path_from_energy(0.0, 2.0, 0.5);

    const auto roots = focal_points(f, lv, p, 2.0);
    REQUIRE(roots.size() >= 1);
    const double r = roots.front().t;
    CHECK(r > 0.5);
    CHECK(r < 2.0);
    CHECK(std::fabs(phi12_numeric(f, lv.E, p, r)) < 1e-8);

    // the closed form agrees that this is a zero: its strict mode refuses
    const PathSpec at_root = path_from_energy(0.0, r, 0.5);
    CHECK_THROWS_AS(phi12_closed(f, lv, at_root), focal_point_error);
}

TEST_CASE("focal search argument screening", "[propagator]") {
    const FamilySpec f = Constant{1.0};
    const EnergyLevel lv = level_for_energy(f, 0.5);
    const PathSpec p = path_from_energy(0.0, 3.0, 0.5);
    CHECK_THROWS_AS(focal_points(f, lv, p, 0.0), bad_input);
    CHECK_THROWS_AS(focal_points(f, lv, p, -1.0), bad_input);
    const EnergyLevel wrong{2.0, -1, ConstantLevel{}};
    CHECK_THROWS_AS(focal_points(f, wrong, p, 3.0), bad_input);
}
