// wkbprop: command-line front end for the semiclassical propagator
// library.  Six subcommands: spectrum, classify, phi12, propagate,
// validate, sweep.  Output is JSON (default) or CSV; exit codes are
// 0 success, 2 validation failure, 3 domain error, 4 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wkb/wkb.hpp"

namespace {

using nlohmann::json;
using namespace wkb;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw bad_input("cannot open output file: " + cfg.out);
    f << text;
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

// Fan work items over a small pool; results land in caller-indexed
// slots so output order never depends on scheduling.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    int tcount = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    if (tcount < 1) tcount = 1;
    tcount = std::min(tcount, n);
    if (tcount <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex mu;
    std::exception_ptr first;
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(tcount));
    for (int t = 0; t < tcount; ++t)
        pool.emplace_back([&] {
            try {
                for (int i; (i = next.fetch_add(1)) < n;) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!first) first = std::current_exception();
                next.store(n);
            }
        });
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

std::vector<double> linspace(double from, double to, int steps) {
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        g[std::size_t(i)] = steps == 1 ? from : from + (to - from) * i / (steps - 1);
    return g;
}

struct ResolvedRun {
    FamilySpec f;
    double E;
    PathSpec p;
};

ResolvedRun resolve_run(const RunConfig& cfg) {
    FamilySpec f = make_family(cfg);
    if (cfg.x1) {
        PathSpec p{cfg.x0, *cfg.x1, cfg.t1};
        const double E = cfg.energy ? *cfg.energy : p.energy();
        return {std::move(f), E, p};
    }
    const double E = resolve_energy(cfg, f);
    PathSpec p = path_from_energy(cfg.x0, cfg.t1, E, cfg.direction);
    return {std::move(f), E, p};
}

json reduced_json(const EnergyLevel& lv) {
    return std::visit(
        detail::overloaded{
            [](const ConstantLevel&) { return json::object(); },
            [](const HermiteLevel& h) { return json{{"lambda", h.lambda}}; },
            [](const BesselLevel& b) { return json{{"nu", b.nu}, {"mu_sq", b.mu_sq}}; },
            [](const LegendreLevel& l) { return json{{"nu", l.nu}, {"mu_sq", l.mu_sq}}; },
            [](const LameLevel& l) { return json{{"n", l.n}, {"B", l.B}}; }},
        lv.reduced);
}

std::pair<std::string, std::string> reduced_columns(const EnergyLevel& lv) {
    return std::visit(
        detail::overloaded{
            [](const ConstantLevel&) { return std::pair<std::string, std::string>{"", ""}; },
            [](const HermiteLevel& h) { return std::pair{fmt(h.lambda), std::string()}; },
            [](const BesselLevel& b) { return std::pair{fmt(b.nu), fmt(b.mu_sq)}; },
            [](const LegendreLevel& l) { return std::pair{fmt(l.nu), fmt(l.mu_sq)}; },
            [](const LameLevel& l) { return std::pair{fmt(l.n), fmt(l.B)}; }},
        lv.reduced);
}

// ---- spectrum -------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg) {
    const FamilySpec f = make_family(cfg);
    const auto levels = admissible_energies(f, cfg.count);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "index,E,reduced1,reduced2\n";
        for (const auto& lv : levels) {
            const auto [r1, r2] = reduced_columns(lv);
            os << lv.index << ',' << fmt(lv.E) << ',' << r1 << ',' << r2 << '\n';
        }
        emit(cfg, os.str());
        return 0;
    }
    json rows = json::array();
    for (const auto& lv : levels)
        rows.push_back({{"index", lv.index}, {"E", lv.E}, {"reduced", reduced_json(lv)}});
    emit_json(cfg, json{{"schema", 1}, {"command", "spectrum"}, {"config", cfg}, {"levels", rows}});
    return 0;
}

// ---- classify -------------------------------------------------------

struct ClassifyArgs {
    std::string lambda, nu, m, n, B;
    bool b_set = false;
};

GaloisNumber exact_rational(const std::string& s, const char* what) {
    const auto r = parse_rational_literal(s);
    if (!r)
        throw bad_input(std::string(what) + " must be an exact rational p/q literal, got '" + s +
                        "'");
    return GaloisNumber::exact(*r);
}

int cmd_classify(const RunConfig& cfg, const ClassifyArgs& args) {
    const FamilySpec f = make_family(cfg);
    IntegrabilityVerdict v;
    const bool direct =
        !(args.lambda.empty() && args.nu.empty() && args.m.empty() && args.n.empty());
    if (direct) {
        if (cfg.family == "hermite") {
            if (args.lambda.empty()) throw bad_input("hermite reduced mode needs --lambda p/q");
            v = classify_hermite(exact_rational(args.lambda, "--lambda"));
        } else if (cfg.family == "bessel") {
            if (args.nu.empty()) throw bad_input("bessel reduced mode needs --nu p/q");
            const bool mu_zero = args.b_set && cfg.b == 0.0;
            v = classify_bessel(exact_rational(args.nu, "--nu"), mu_zero);
        } else if (cfg.family == "legendre") {
            if (args.m.empty() || args.n.empty())
                throw bad_input("legendre reduced mode needs both --m p/q and --n p/q");
            v = classify_legendre(exact_rational(args.m, "--m"), exact_rational(args.n, "--n"));
        } else if (cfg.family == "lame") {
            if (args.n.empty()) throw bad_input("lame reduced mode needs --n p/q");
            double B = 0.0;
            if (!args.B.empty()) {
                if (const auto r = parse_rational_literal(args.B))
                    B = double(r->num) / double(r->den);
                else
                    B = std::stod(args.B);
            }
            v = classify_lame(exact_rational(args.n, "--n"), B, std::get<Lame>(f).ed);
        } else {
            throw bad_input("reduced parameters apply to hermite, bessel, legendre, or lame");
        }
    } else {
        v = classify(f, resolve_energy(cfg, f));
    }

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "status,case,notes\n";
        std::string notes;
        for (const auto& s : v.notes) {
            if (!notes.empty()) notes += "; ";
            notes += s;
        }
        os << to_string(v.status) << ',' << csv_quote(v.case_id) << ',' << csv_quote(notes)
           << '\n';
        emit(cfg, os.str());
        return 0;
    }
    json out{{"schema", 1},
             {"command", "classify"},
             {"config", cfg},
             {"status", to_string(v.status)},
             {"case", v.case_id},
             {"notes", v.notes}};
    if (!v.spectrum.empty()) out["spectrum"] = v.spectrum;
    emit_json(cfg, out);
    return 0;
}

// ---- phi12 ----------------------------------------------------------

int cmd_phi12(const RunConfig& cfg) {
    const auto [f, E, p] = resolve_run(cfg);
    const double oracle = phi12_numeric(f, E, p, p.t1, cfg.tol);

    json out{{"schema", 1}, {"command", "phi12"}, {"config", cfg},
             {"E", E},      {"t1", p.t1},         {"oracle", oracle}};
    bool have_closed = false;
    double closed = 0.0;
    try {
        closed = phi12_closed(f, level_for_energy(f, E), p, FocalCheck::ignore);
        have_closed = true;
        out["closed"] = closed;
        const double abs_diff = std::fabs(closed - oracle);
        out["abs_diff"] = abs_diff;
        out["rel_diff"] = abs_diff / std::max(std::fabs(oracle), 1e-300);
    } catch (const not_integrable_error& e) {
        out["closed_unavailable"] = e.what();
    } catch (const domain_error& e) {
        out["closed_unavailable"] = e.what();
    }
    if (std::fabs(oracle) <= 1e-8 * std::max(1.0, p.t1))
        out["warning"] = "focal point at or near t1: phi12 vanishes and the prefactor diverges";

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "closed,oracle,abs,rel\n";
        if (have_closed)
            os << fmt(closed) << ',' << fmt(oracle) << ',' << fmt(out["abs_diff"].get<double>())
               << ',' << fmt(out["rel_diff"].get<double>()) << '\n';
        else
            os << ',' << fmt(oracle) << ",,\n";
        emit(cfg, os.str());
        return 0;
    }
    emit_json(cfg, out);
    return 0;
}

// ---- propagate ------------------------------------------------------

int cmd_propagate(const RunConfig& cfg) {
    const auto [f, E, p] = resolve_run(cfg);
    double phi = 0.0;
    Source src = Source::ClosedForm;
    try {
        phi = phi12_closed(f, level_for_energy(f, E), p);
    } catch (const focal_point_error&) {
        throw;  // a genuine focal point stops assembly in either branch
    } catch (const not_integrable_error&) {
        phi = phi12_numeric(f, E, p, p.t1, cfg.tol);
        src = Source::Oracle;
    } catch (const domain_error&) {
        phi = phi12_numeric(f, E, p, p.t1, cfg.tol);
        src = Source::Oracle;
    }
    const PropagatorValue v = kwkb(p, phi, cfg.hbar, src);

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "re,im,modK,phase,action,detJ\n"
           << fmt(v.re) << ',' << fmt(v.im) << ',' << fmt(v.modulus) << ',' << fmt(v.phase)
           << ',' << fmt(v.action) << ',' << fmt(v.det_j) << '\n';
        emit(cfg, os.str());
        return 0;
    }
    emit_json(cfg, json{{"schema", 1},
                        {"command", "propagate"},
                        {"config", cfg},
                        {"value",
                         {{"re", v.re},
                          {"im", v.im},
                          {"modulus", v.modulus},
                          {"phase", v.phase},
                          {"action", v.action},
                          {"det_j", v.det_j},
                          {"hbar", v.hbar},
                          {"source", to_string(v.source)}}}});
    return 0;
}

// ---- validate -------------------------------------------------------

struct ValidateItem {
    std::string label;
    FamilySpec f;
    double E;
    PathSpec p;
};

// Built-in per-family grids; every point compares the closed form
// against the integrator.
std::pair<std::vector<ValidateItem>, double> validate_grid(const RunConfig& cfg) {
    std::vector<ValidateItem> items;
    double vtol = 1e-8;
    if (cfg.family == "constant") {
        vtol = 1e-9;
        for (double w : {0.0, 4.0, -4.0})
            for (double t : linspace(0.1, 3.0, 15))
                items.push_back({"omega=" + fmt(w) + " t1=" + fmt(t), Constant{w}, 0.5,
                                 path_from_energy(0.0, t, 0.5)});
    } else if (cfg.family == "hermite") {
        const FamilySpec f = Hermite{cfg.a};
        const auto levels = admissible_energies(f, 4);
        for (int m : {0, 1, 3})
            for (double t : linspace(0.1, 2.0, 20))
                items.push_back({"m=" + std::to_string(m) + " t1=" + fmt(t), f,
                                 levels[std::size_t(m)].E,
                                 path_from_energy(0.0, t, levels[std::size_t(m)].E)});
    } else if (cfg.family == "bessel") {
        for (int n : {1, 2, 3}) {
            const double E = 0.5;
            const FamilySpec f = Bessel{2.0 * E * n * (n + 1), cfg.b};
            for (double t : linspace(0.1, 3.0, 15))
                items.push_back({"n=" + std::to_string(n) + " t1=" + fmt(t), f, E,
                                 path_from_energy(1.0, t, E)});
        }
    } else if (cfg.family == "legendre") {
        for (int n : {1, 2, 3}) {
            const double E = 0.5;
            const FamilySpec f = Legendre{2.0 * E * n * (n + 1), 0.0};
            for (double t : linspace(0.1, 3.0, 15))
                items.push_back({"n=" + std::to_string(n) + " t1=" + fmt(t), f, E,
                                 path_from_energy(cfg.x0, t, E)});
        }
    } else if (cfg.family == "lame") {
        vtol = 1e-7;
        for (double B : {5.0, 10.0}) {
            const double E = 0.5;
            const FamilySpec f = Lame{2.0, 2.0 * E * B, cfg.g2, cfg.g3};
            for (double t : linspace(0.1, 1.5, 15))
                items.push_back({"B=" + fmt(B) + " t1=" + fmt(t), f, E,
                                 path_from_energy(0.0, t, E)});
        }
    } else {
        throw bad_input("unknown family: " + cfg.family);
    }
    return {std::move(items), vtol};
}

int cmd_validate(const RunConfig& cfg, bool inject_fault) {
    const auto [items, vtol] = validate_grid(cfg);
    struct Row {
        double closed = 0.0, oracle = 0.0, rel = 0.0;
        bool ok = false;
    };
    std::vector<Row> rows(items.size());
    parallel_for(int(items.size()), cfg.threads, [&](int i) {
        const auto& it = items[std::size_t(i)];
        double closed = phi12_closed(it.f, level_for_energy(it.f, it.E), it.p, FocalCheck::ignore);
        if (inject_fault) closed *= 1.0 + 1e-5;
        const double oracle = phi12_numeric(it.f, it.E, it.p, it.p.t1, cfg.tol);
        const double rel = std::fabs(closed - oracle) / std::max(std::fabs(oracle), 1e-12);
        rows[std::size_t(i)] = {closed, oracle, rel, rel <= vtol};
    });

    double max_rel = 0.0;
    bool pass = true;
    for (const auto& r : rows) {
        max_rel = std::max(max_rel, r.rel);
        pass = pass && r.ok;
    }

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "label,t1,closed,oracle,rel,ok\n";
        for (std::size_t i = 0; i < items.size(); ++i)
            os << csv_quote(items[i].label) << ',' << fmt(items[i].p.t1) << ','
               << fmt(rows[i].closed) << ',' << fmt(rows[i].oracle) << ',' << fmt(rows[i].rel)
               << ',' << (rows[i].ok ? "true" : "false") << '\n';
        emit(cfg, os.str());
    } else {
        json jitems = json::array();
        for (std::size_t i = 0; i < items.size(); ++i)
            jitems.push_back({{"label", items[i].label},
                              {"t1", items[i].p.t1},
                              {"closed", rows[i].closed},
                              {"oracle", rows[i].oracle},
                              {"rel", rows[i].rel},
                              {"ok", rows[i].ok}});
        emit_json(cfg, json{{"schema", 1},
                            {"command", "validate"},
                            {"config", cfg},
                            {"tolerance", vtol},
                            {"injected_fault", inject_fault},
                            {"points", jitems.size()},
                            {"max_rel", max_rel},
                            {"pass", pass},
                            {"items", jitems}});
    }
    return pass ? 0 : 2;
}

// ---- sweep ----------------------------------------------------------

int cmd_sweep(const RunConfig& cfg) {
    const FamilySpec f = make_family(cfg);
    const auto grid = linspace(cfg.sweep.from, cfg.sweep.to, cfg.sweep.steps);
    if (grid.front() <= 0.0 || grid.back() <= 0.0)
        throw bad_input("sweep range must stay positive");

    struct Row {
        double var = 0.0, phi12 = 0.0, det_j = 0.0;
        double modk = std::nan(""), phase = std::nan("");
    };
    std::vector<Row> rows(grid.size());

    const bool over_t1 = cfg.sweep_var == "t1";
    double E0 = 0.0;
    if (over_t1 && !cfg.x1) E0 = resolve_energy(cfg, f);
    if (!over_t1 && cfg.x1)
        throw bad_input("energy sweep varies the endpoint; leave x1 unset");

    parallel_for(int(grid.size()), cfg.threads, [&](int i) {
        const double g = grid[std::size_t(i)];
        double E;
        PathSpec p = [&]() -> PathSpec {
            if (over_t1) {
                if (cfg.x1) {
                    PathSpec q{cfg.x0, *cfg.x1, g};
                    E = q.energy();
                    return q;
                }
                E = E0;
                return path_from_energy(cfg.x0, g, E0, cfg.direction);
            }
            E = g;
            return path_from_energy(cfg.x0, cfg.t1, g, cfg.direction);
        }();
        Row r;
        r.var = g;
        r.phi12 = phi12_numeric(f, E, p, p.t1, cfg.tol);
        r.det_j = van_vleck_det(p.t1, r.phi12);
        try {
            const PropagatorValue v = kwkb(p, r.phi12, cfg.hbar);
            r.modk = v.modulus;
            r.phase = v.phase;
        } catch (const focal_point_error&) {
            // det J <= 0: the prefactor has no value; the row keeps NaN
        }
        rows[std::size_t(i)] = r;
    });

    const char* var_name = over_t1 ? "t1" : "E";
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << var_name << ",phi12,detJ,modK,phase\n";
        for (const auto& r : rows)
            os << fmt(r.var) << ',' << fmt(r.phi12) << ',' << fmt(r.det_j) << ',' << fmt(r.modk)
               << ',' << fmt(r.phase) << '\n';
        emit(cfg, os.str());
        return 0;
    }
    json jrows = json::array();
    for (const auto& r : rows)
        jrows.push_back({{var_name, r.var},
                         {"phi12", r.phi12},
                         {"detJ", r.det_j},
                         {"modK", r.modk},
                         {"phase", r.phase}});
    emit_json(cfg, json{{"schema", 1}, {"command", "sweep"}, {"config", cfg}, {"rows", jrows}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical propagator toolkit: spectra, integrability classification, "
                 "variational matrix elements, and WKB assembly"};
    app.require_subcommand(1);

    RunConfig cfg;
    double x1v = 0.0, energyv = 0.0;
    app.add_option("--family", cfg.family, "constant | hermite | bessel | legendre | lame");
    app.add_option("--omega", cfg.omega, "constant-family frequency (may be negative)");
    app.add_option("--a", cfg.a, "coefficient parameter a");
    auto* opt_b = app.add_option("--b", cfg.b, "coefficient parameter b");
    app.add_option("--g2", cfg.g2, "lattice invariant g2 (lame)");
    app.add_option("--g3", cfg.g3, "lattice invariant g3 (lame)");
    app.add_option("--x0", cfg.x0, "initial position");
    auto* opt_x1 = app.add_option("--x1", x1v, "final position (default: from energy)");
    app.add_option("--t1", cfg.t1, "transit time");
    app.add_option("--direction", cfg.direction, "velocity sign when x1 is derived (+1 or -1)");
    auto* opt_energy = app.add_option("-E,--energy", energyv, "explicit energy");
    app.add_option("-m,--index", cfg.index, "spectral index (m for hermite, n otherwise)");
    app.add_option("-n,--count", cfg.count, "number of spectrum rows");
    app.add_option("--hbar", cfg.hbar, "Planck constant");
    app.add_option("--tol", cfg.tol, "integrator tolerance");
    app.add_option("--format", cfg.format, "json | csv");
    app.add_option("--threads", cfg.threads, "worker pool size (0: hardware concurrency)");
    app.add_option("--out", cfg.out, "write output to a file instead of stdout");
    app.add_option("--from", cfg.sweep.from, "sweep start");
    app.add_option("--to", cfg.sweep.to, "sweep end");
    app.add_option("--steps", cfg.sweep.steps, "sweep point count");
    app.add_option("--sweep-var", cfg.sweep_var, "swept quantity: t1 | energy");
    app.set_config("--config", "", "flat key=value configuration file");

    auto* sc_spectrum = app.add_subcommand("spectrum", "list admissible energies");
    auto* sc_classify =
        app.add_subcommand("classify", "integrability verdict from reduced parameters or energy");
    ClassifyArgs cls;
    sc_classify->add_option("--lambda", cls.lambda, "hermite exponent 2m+1 as p/q");
    sc_classify->add_option("--nu", cls.nu, "bessel index nu as p/q");
    sc_classify->add_option("--m", cls.m, "legendre exponent mu as p/q");
    sc_classify->add_option("--n", cls.n, "legendre/lame exponent n as p/q");
    sc_classify->add_option("--B", cls.B, "lame eigenvalue B (p/q or decimal)");
    auto* sc_phi12 =
        app.add_subcommand("phi12", "matrix element: closed form vs integrator with disagreement");
    auto* sc_propagate = app.add_subcommand("propagate", "assemble the WKB propagator value");
    auto* sc_validate =
        app.add_subcommand("validate", "closed-form vs integrator grid for one family");
    bool inject_fault = false;
    sc_validate->add_flag("--inject-fault", inject_fault,
                          "perturb closed values by 1+1e-5 to exercise failure reporting");
    auto* sc_sweep = app.add_subcommand("sweep", "tabulate phi12, det J, |K|, phase over a grid");
    for (auto* sc : {sc_spectrum, sc_classify, sc_phi12, sc_propagate, sc_validate, sc_sweep})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (opt_x1->count()) cfg.x1 = x1v;
        if (opt_energy->count()) cfg.energy = energyv;
        cls.b_set = opt_b->count() > 0;
        cfg.check();

        if (sc_spectrum->parsed()) return cmd_spectrum(cfg);
        if (sc_classify->parsed()) return cmd_classify(cfg, cls);
        if (sc_phi12->parsed()) return cmd_phi12(cfg);
        if (sc_propagate->parsed()) return cmd_propagate(cfg);
        if (sc_validate->parsed()) return cmd_validate(cfg, inject_fault);
        if (sc_sweep->parsed()) return cmd_sweep(cfg);
        throw bad_input("no subcommand selected");
    } catch (const bad_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const wkb::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
