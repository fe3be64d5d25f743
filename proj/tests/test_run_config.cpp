#include <catch2/catch_amalgamated.hpp>

#include "wkb/run_config.hpp"

using namespace wkb;
using nlohmann::json;

TEST_CASE("config survives a serialization round trip", "[config]") {
    RunConfig c;
    c.family = "lame";
    c.a = 2.0;
    c.b = 10.0;
    c.g2 = 28.0;
    c.g3 = -24.0;
    c.x0 = 0.25;
    c.t1 = 0.8;
    c.direction = -1;
    c.energy = 0.5;
    c.hbar = 0.7;
    c.tol = 1e-9;
    c.format = "csv";
    c.threads = 3;
    c.out = "run.csv";
    c.sweep_var = "energy";
    c.sweep = SweepRange{0.2, 1.4, 17};

    const json j = c;
    const RunConfig d = j.get<RunConfig>();
    const json j2 = d;
    CHECK(j == j2);
    CHECK(d.family == c.family);
    CHECK(d.b == c.b);
    CHECK(d.direction == -1);
    REQUIRE(d.energy.has_value());
    CHECK(*d.energy == 0.5);
    CHECK_FALSE(d.x1.has_value());
    CHECK(d.sweep.steps == 17);
    CHECK(d.format == "csv");

    // optional endpoint round-trips once present
    c.x1 = 1.75;
    const RunConfig e = json(c).get<RunConfig>();
    REQUIRE(e.x1.has_value());
    CHECK(*e.x1 == 1.75);
}

TEST_CASE("defaults fill unspecified keys", "[config]") {
    const RunConfig c = json::parse(R"({"family": "hermite", "a": 1.0})").get<RunConfig>();
    CHECK(c.family == "hermite");
    CHECK(c.t1 == 1.0);
    CHECK(c.hbar == 1.0);
    CHECK(c.tol == 1e-10);
    CHECK_FALSE(c.energy.has_value());
    CHECK(c.format == "json");
}

TEST_CASE("malformed configs are rejected up front", "[config]") {
    CHECK_THROWS_AS(json::parse(R"({"format": "xml"})").get<RunConfig>(), bad_input);
    CHECK_THROWS_AS(json::parse(R"({"sweep_var": "x0"})").get<RunConfig>(), bad_input);
    CHECK_THROWS_AS(json::parse(R"({"direction": 2})").get<RunConfig>(), bad_input);
    CHECK_THROWS_AS(json::parse(R"({"sweep": {"steps": 0}})").get<RunConfig>(), bad_input);
    CHECK_THROWS_AS(json::parse(R"({"threads": -1})").get<RunConfig>(), bad_input);
}

TEST_CASE("family construction screens parameters", "[config]") {
    RunConfig c;
    c.family = "quartic";
    CHECK_THROWS_AS(make_family(c), bad_input);

    c.family = "lame";
    c.a = 0.0;  // excluded: the coefficient loses its elliptic part
    CHECK_THROWS_AS(make_family(c), bad_input);

    c.a = 2.0;
    c.g2 = 0.0;
    c.g3 = 0.0;  // degenerate lattice
    CHECK_THROWS_AS(make_family(c), bad_input);

    c.g2 = 28.0;
    c.g3 = -24.0;
    CHECK_NOTHROW(make_family(c));
}

TEST_CASE("energy selection from index or explicit value", "[config]") {
    RunConfig c;
    c.family = "hermite";
    c.a = 1.0;
    const FamilySpec f = make_family(c);

    c.index = 0;
    CHECK(resolve_energy(c, f) == 0.5);
    c.index = 1;
    CHECK(resolve_energy(c, f) == 0.5 / 9.0);
    c.energy = 0.3;
    CHECK(resolve_energy(c, f) == 0.3);  // explicit value wins
    c.energy.reset();
    c.index = -1;
    CHECK_THROWS_AS(resolve_energy(c, f), bad_input);

    RunConfig l;
    l.family = "legendre";
    l.a = 12.0;
    const FamilySpec lf = make_family(l);
    l.index = 2;  // nu = 2: a = 2E n(n+1) gives E = 1
    CHECK(resolve_energy(l, lf) == 1.0);
    l.index = 0;
    CHECK_THROWS_AS(resolve_energy(l, lf), bad_input);

    RunConfig k;
    k.family = "constant";
    CHECK_THROWS_AS(resolve_energy(k, make_family(k)), bad_input);
    k.energy = 2.0;
    CHECK(resolve_energy(k, make_family(k)) == 2.0);
}

TEST_CASE("path construction honors endpoint or energy", "[config]") {
    RunConfig c;
    c.x0 = 1.0;
    c.x1 = 3.0;
    c.t1 = 2.0;
    const PathSpec p = make_path(c, 0.5);
    CHECK(p.x1 == 3.0);
    CHECK(p.velocity() == 1.0);

    c.x1.reset();
    c.direction = -1;
    const PathSpec q = make_path(c, 0.5);  // speed 1 leftward
    CHECK(q.x1 == -1.0);
    CHECK(q.velocity() == -1.0);
}
