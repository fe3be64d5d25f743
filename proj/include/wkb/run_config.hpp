#pragma once

// Run description shared by the command-line tool and its tests: one
// struct holding family parameters, path, energy selection, output
// options, and sweep grids, with a JSON round-trip.

#include <optional>
#include <string>

#include <json.hpp>

#include "wkb/common.hpp"
#include "wkb/family.hpp"

namespace wkb {

struct SweepRange {
    double from = 0.1, to = 3.0;
    int steps = 30;
};

struct RunConfig {
    std::string family = "constant";
    double omega = 1.0;            // constant
    double a = 1.0, b = 0.0;       // hermite / bessel / legendre / lame
    double g2 = 28.0, g3 = -24.0;  // lame lattice; default has roots 2, 1, -3

    double x0 = 0.0;
    std::optional<double> x1;  // absent: endpoint follows from E and direction
    double t1 = 1.0;
    int direction = 1;

    std::optional<double> energy;  // explicit E; absent: use the spectral index
    int index = 0;
    int count = 5;  // spectrum listing length

    double hbar = 1.0;
    double tol = 1e-10;
    std::string format = "json";  // json | csv
    int threads = 0;              // 0: hardware concurrency
    std::string out;              // empty: stdout

    std::string sweep_var = "t1";  // t1 | energy
    SweepRange sweep;

    void check() const {
        if (format != "json" && format != "csv")
            throw bad_input("format must be json or csv, got " + format);
        if (sweep_var != "t1" && sweep_var != "energy")
            throw bad_input("sweep_var must be t1 or energy, got " + sweep_var);
        if (direction != 1 && direction != -1) throw bad_input("direction must be +1 or -1");
        if (sweep.steps < 1) throw bad_input("sweep needs at least one step");
        if (threads < 0) throw bad_input("threads must be >= 0");
    }
};

inline void to_json(nlohmann::json& j, const SweepRange& s) {
    j = nlohmann::json{{"from", s.from}, {"to", s.to}, {"steps", s.steps}};
}

inline void from_json(const nlohmann::json& j, SweepRange& s) {
    s.from = j.value("from", s.from);
    s.to = j.value("to", s.to);
    s.steps = j.value("steps", s.steps);
}

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"family", c.family},   {"omega", c.omega},
                       {"a", c.a},             {"b", c.b},
                       {"g2", c.g2},           {"g3", c.g3},
                       {"x0", c.x0},           {"t1", c.t1},
                       {"direction", c.direction}, {"index", c.index},
                       {"count", c.count},     {"hbar", c.hbar},
                       {"tol", c.tol},         {"format", c.format},
                       {"threads", c.threads}, {"out", c.out},
                       {"sweep_var", c.sweep_var}, {"sweep", c.sweep}};
    if (c.x1) j["x1"] = *c.x1;
    if (c.energy) j["energy"] = *c.energy;
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
    c.family = j.value("family", c.family);
    c.omega = j.value("omega", c.omega);
    c.a = j.value("a", c.a);
    c.b = j.value("b", c.b);
    c.g2 = j.value("g2", c.g2);
    c.g3 = j.value("g3", c.g3);
    c.x0 = j.value("x0", c.x0);
    if (j.contains("x1")) c.x1 = j.at("x1").get<double>();
    c.t1 = j.value("t1", c.t1);
    c.direction = j.value("direction", c.direction);
    if (j.contains("energy")) c.energy = j.at("energy").get<double>();
    c.index = j.value("index", c.index);
    c.count = j.value("count", c.count);
    c.hbar = j.value("hbar", c.hbar);
    c.tol = j.value("tol", c.tol);
    c.format = j.value("format", c.format);
    c.threads = j.value("threads", c.threads);
    c.out = j.value("out", c.out);
    c.sweep_var = j.value("sweep_var", c.sweep_var);
    if (j.contains("sweep")) c.sweep = j.at("sweep").get<SweepRange>();
    c.check();
}

// Family construction rejects bad parameters (zero a, degenerate
// lattice, unknown name) before any numerics run.
inline FamilySpec make_family(const RunConfig& c) {
    if (c.family == "constant") return Constant{c.omega};
    if (c.family == "hermite") return Hermite{c.a};
    if (c.family == "bessel") return Bessel{c.a, c.b};
    if (c.family == "legendre") return Legendre{c.a, c.b};
    if (c.family == "lame") return Lame{c.a, c.b, c.g2, c.g3};
    throw bad_input("unknown family: " + c.family +
                    " (expected constant, hermite, bessel, legendre, or lame)");
}

inline double resolve_energy(const RunConfig& c, const FamilySpec& f) {
    if (c.energy) {
        if (!(*c.energy > 0.0) || !std::isfinite(*c.energy))
            throw bad_input("energy must be positive");
        return *c.energy;
    }
    if (std::holds_alternative<Constant>(f))
        throw bad_input("constant family has no spectrum; pass an explicit energy");
    if (std::holds_alternative<Hermite>(f)) {
        if (c.index < 0) throw bad_input("spectral index must be >= 0");
        return admissible_energies(f, c.index + 1).back().E;
    }
    if (c.index < 1) throw bad_input("spectral index must be >= 1 for this family");
    return admissible_energies(f, c.index).back().E;
}

inline PathSpec make_path(const RunConfig& c, double E) {
    if (c.x1) return PathSpec{c.x0, *c.x1, c.t1};
    return path_from_energy(c.x0, c.t1, E, c.direction);
}

}  // namespace wkb
