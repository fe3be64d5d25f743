#pragma once

// Integrability classification of the normal variational equation by
// exact arithmetic on the reduced parameters.

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <string>
#include <vector>

#include "wkb/family.hpp"
#include "wkb/rational.hpp"

namespace wkb {

enum class IntegrabilityStatus { Integrable, NonIntegrable, Conditional, IntegrableAllE };

inline const char* to_string(IntegrabilityStatus s) {
    switch (s) {
        case IntegrabilityStatus::Integrable: return "Integrable";
        case IntegrabilityStatus::NonIntegrable: return "NonIntegrable";
        case IntegrabilityStatus::Conditional: return "Conditional";
        default: return "IntegrableAllE";
    }
}

struct IntegrabilityVerdict {
    IntegrabilityStatus status = IntegrabilityStatus::NonIntegrable;
    std::string case_id = "none";
    std::string spectrum;            // admissible-energy formula, when one exists
    std::vector<std::string> notes;  // snap reports, degeneracies, boundary flags
};

namespace kimura {

// x in (1/k)(k Z + r) for one of the listed residues r.
inline bool in_set(const Rational& x, int k, std::initializer_list<int> residues) {
    const long long kn = x.num * k;
    if (kn % x.den != 0) return false;
    long long t = (kn / x.den) % k;
    if (t < 0) t += k;
    for (int r : residues)
        if (t == r) return true;
    return false;
}

inline bool half_odd(const Rational& x) { return in_set(x, 2, {1}); }
inline bool thirds(const Rational& x) { return in_set(x, 3, {1, 2}); }
inline bool quarter_odd(const Rational& x) { return in_set(x, 4, {1, 3}); }
inline bool sixths(const Rational& x) { return in_set(x, 6, {1, 5}); }
inline bool fifths_1(const Rational& x) { return in_set(x, 5, {1, 4}); }
inline bool fifths_2(const Rational& x) { return in_set(x, 5, {2, 3}); }
inline bool tenths_1(const Rational& x) { return in_set(x, 10, {1, 9}); }
inline bool tenths_3(const Rational& x) { return in_set(x, 10, {3, 7}); }

}  // namespace kimura

// ---- per-family decisions ------------------------------------------

inline IntegrabilityVerdict classify_hermite(const GaloisNumber& lambda) {
    IntegrabilityVerdict v;
    if (lambda.is_integer() && lambda.rat().num >= 1 && lambda.rat().num % 2 == 1) {
        const long long m = (lambda.rat().num - 1) / 2;
        v.status = IntegrabilityStatus::Integrable;
        v.case_id = "Hermite-odd-lambda";
        v.notes.push_back("lambda = " + std::to_string(lambda.rat().num) + " = 2m+1 with m = " +
                          std::to_string(m));
        return v;
    }
    v.status = IntegrabilityStatus::NonIntegrable;
    v.notes.push_back("lambda is not an odd positive integer");
    return v;
}

inline IntegrabilityVerdict classify_bessel(const GaloisNumber& nu, bool mu_zero) {
    IntegrabilityVerdict v;
    if (mu_zero) {
        v.status = IntegrabilityStatus::IntegrableAllE;
        v.case_id = "Euler-Cauchy";
        v.notes.push_back(
            "b = 0: the equation is equidimensional and solves in powers of x for every E");
        return v;
    }
    if (nu.is_integer()) {
        const long long k = nu.rat().num;
        if (k == 0 || k == -1) {
            v.status = IntegrabilityStatus::IntegrableAllE;
            v.case_id = "Bessel-constant-coefficient";
            v.notes.push_back("nu(nu+1) = 0: the coefficient degenerates to the constant b");
            return v;
        }
        v.status = IntegrabilityStatus::Integrable;
        v.case_id = "Bessel-nu-integer";
        v.notes.push_back("nu = " + to_string(nu.rat()));
        return v;
    }
    v.status = IntegrabilityStatus::NonIntegrable;
    v.notes.push_back(nu.is_complex() ? "nu is complex (1 + 2a/E < 0)" : "nu is not an integer");
    return v;
}

// Kimura's decision for the hypergeometric pullback with exponent
// parameters (m, n). Case A first, then the eight tabulated rows.
inline IntegrabilityVerdict classify_legendre(const GaloisNumber& m, const GaloisNumber& n) {
    IntegrabilityVerdict v;
    if (n.is_integer()) {
        v.status = IntegrabilityStatus::Integrable;
        v.case_id = "Kimura-A-1";
        v.notes.push_back("n = " + to_string(n.rat()) + " is an integer");
        return v;
    }
    if (m.is_exact() && n.is_exact() && !m.is_integer()) {
        if ((m.rat() + n.rat()).is_integer()) {
            v.status = IntegrabilityStatus::Integrable;
            v.case_id = "Kimura-A-2";
            v.notes.push_back("m + n = " + to_string(m.rat() + n.rat()) +
                              " with neither m nor n integral");
            return v;
        }
        if ((m.rat() - n.rat()).is_integer()) {
            v.status = IntegrabilityStatus::Integrable;
            v.case_id = "Kimura-A-3";
            v.notes.push_back("m - n = " + to_string(m.rat() - n.rat()) +
                              " with neither m nor n integral");
            return v;
        }
    }
    if (m.is_exact()) {
        const Rational& mr = m.rat();
        if (kimura::half_odd(mr)) {
            v.status = IntegrabilityStatus::Integrable;
            v.case_id = "Kimura-B-1";
            v.notes.push_back("m is half-odd; n is unrestricted in this row");
            return v;
        }
        if (n.is_exact()) {
            const Rational& nr = n.rat();
            struct Row {
                bool (*ms)(const Rational&);
                bool (*ns)(const Rational&);
                int id;
            };
            constexpr Row rows[] = {
                {kimura::thirds, kimura::quarter_odd, 2}, {kimura::thirds, kimura::sixths, 3},
                {kimura::quarter_odd, kimura::sixths, 4}, {kimura::thirds, kimura::tenths_3, 5},
                {kimura::fifths_1, kimura::sixths, 6},    {kimura::fifths_2, kimura::tenths_3, 7},
                {kimura::fifths_1, kimura::tenths_1, 8},
            };
            for (const Row& r : rows) {
                if (r.ms(mr) && r.ns(nr)) {
                    v.status = IntegrabilityStatus::Integrable;
                    v.case_id = "Kimura-B-" + std::to_string(r.id);
                    return v;
                }
            }
        }
    }
    v.status = IntegrabilityStatus::NonIntegrable;
    if (m.is_integer()) v.notes.push_back("boundary: m integral but n not; no case applies");
    return v;
}

namespace detail {
inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace detail

inline IntegrabilityVerdict classify_lame(GaloisNumber n, double B, const EllipticData& ed) {
    require_finite(B, "B");
    IntegrabilityVerdict v;
    if (n.is_complex()) {
        v.status = IntegrabilityStatus::NonIntegrable;
        v.notes.push_back("n is complex (1 + 2a/E < 0)");
        return v;
    }
    if (n.value() < -0.5) {
        n = n.reflected();
        v.notes.push_back("normalized by n -> -n-1 to " +
                          (n.is_exact() ? to_string(n.rat()) : detail::fmt_g(n.value())));
    }
    if (n.is_exact()) {
        const Rational r = n.rat();
        if (r == Rational(0))
            throw bad_input("Lame: n = 0 or n = -1 forces a = 0, which is excluded");
        if (r.is_integer() && r.num >= 1) {
            v.status = IntegrabilityStatus::Integrable;
            v.case_id = "Lame-Hermite-Halphen";
            v.notes.push_back("n = " + to_string(r));
            if (r.num == 1) {
                const double h = 4.0 * B * B * B - ed.g2 * B - ed.g3;
                v.notes.push_back("h(B) = 4B^3 - g2 B - g3 = " + detail::fmt_g(h));
                if (h == 0.0)
                    v.notes.push_back(
                        "degenerate: h(B) = 0, the two n = 1 solutions coincide and the "
                        "standard pair must be replaced by a limiting basis");
            }
            return v;
        }
        const Rational hr = r + Rational(1, 2);
        if (hr.is_integer() && hr.num >= 1) {
            v.status = IntegrabilityStatus::Conditional;
            v.case_id = "Lame-Brioschi-Halphen-Crawford";
            v.notes.push_back("n + 1/2 = " + to_string(hr) +
                              "; integrability depends on an algebraic condition in (B, g2, g3) "
                              "not decided here");
            return v;
        }
        if (!hr.is_integer()) {
            const bool third = (hr * Rational(3)).is_integer();
            const bool quarter = (hr * Rational(4)).is_integer();
            const bool fifth = (hr * Rational(5)).is_integer();
            if (third || quarter || fifth) {
                v.status = IntegrabilityStatus::Conditional;
                v.case_id = "Lame-Baldassarri";
                v.notes.push_back(
                    "n + 1/2 lies in (1/3)Z, (1/4)Z or (1/5)Z away from Z; only finitely many "
                    "lattices admit integrability at this n");
                return v;
            }
        }
    }
    v.status = IntegrabilityStatus::NonIntegrable;
    v.notes.push_back(n.is_exact() ? "n matches no Lame integrability class"
                                   : "n is not rational within the snap tolerance");
    return v;
}

// ---- floating-point entry point ------------------------------------

namespace detail {

inline GaloisNumber snap_reduced(double value, const char* name, double tol, long long max_den,
                                 std::vector<std::string>& notes) {
    const GaloisNumber g = GaloisNumber::from_double(value, tol, max_den);
    if (g.is_exact())
        notes.push_back(std::string(name) + " = " + to_string(g.rat()) + " (snapped from " +
                        fmt_g(value) + ", tol " + fmt_g(tol) + ")");
    else
        notes.push_back(std::string(name) + " = " + fmt_g(value) +
                        " (no rational with denominator <= " + std::to_string(max_den) +
                        " within " + fmt_g(tol) + ")");
    return g;
}

// Index nu with nu(nu+1) = a/(2E), snapped; nu = 0 and nu = -1 are
// unreachable for a != 0, so such snaps are demoted to irrational.
inline GaloisNumber snapped_index(double a, double E, const char* name, double tol,
                                  long long max_den, std::vector<std::string>& notes) {
    const double disc = 1.0 + 2.0 * a / E;
    if (disc < 0.0) {
        notes.push_back(std::string(name) + " is complex: 1 + 2a/E = " + fmt_g(disc) + " < 0");
        return GaloisNumber::complex_marker();
    }
    const GaloisNumber g =
        snap_reduced(0.5 * (-1.0 + std::sqrt(disc)), name, tol, max_den, notes);
    if (g.is_exact() && (g.rat() == Rational(0) || g.rat() == Rational(-1))) {
        notes.push_back(std::string(name) + " = 0 would force a = 0; snap rejected");
        return GaloisNumber::irrational(g.value());
    }
    return g;
}

}  // namespace detail

inline IntegrabilityVerdict classify(const FamilySpec& f, double E, double snap_tol = 1e-12,
                                     long long max_den = 1000) {
    if (!(E > 0.0) || !std::isfinite(E)) throw bad_input("classify: E must be positive and finite");
    return std::visit(
        detail::overloaded{
            [&](const Constant&) {
                IntegrabilityVerdict v;
                v.status = IntegrabilityStatus::IntegrableAllE;
                v.case_id = "constant-coefficient";
                v.spectrum = "every E > 0";
                v.notes.push_back("constant coefficient integrates in closed form at every energy");
                return v;
            },
            [&](const Hermite& h) {
                IntegrabilityVerdict v;
                const double prod = 2.0 * E * h.a;
                if (prod <= 0.0) {
                    v.status = IntegrabilityStatus::NonIntegrable;
                    v.spectrum = "empty (a <= 0)";
                    v.notes.push_back("lambda^2 = 1/(2Ea) < 0: lambda is imaginary");
                    return v;
                }
                std::vector<std::string> notes;
                const GaloisNumber lambda =
                    detail::snap_reduced(1.0 / std::sqrt(prod), "lambda", snap_tol, max_den, notes);
                v = classify_hermite(lambda);
                v.spectrum = "E_m = 1/(2a (2m+1)^2), m = 0, 1, 2, ...";
                v.notes.insert(v.notes.begin(), notes.begin(), notes.end());
                return v;
            },
            [&](const Bessel& bf) {
                std::vector<std::string> notes;
                const GaloisNumber nu =
                    detail::snapped_index(bf.a, E, "nu", snap_tol, max_den, notes);
                IntegrabilityVerdict v = classify_bessel(nu, bf.b == 0.0);
                v.spectrum =
                    bf.a > 0 ? "E_n = a/(2 n (n+1)), n = 1, 2, ..." : "empty (a <= 0)";
                v.notes.insert(v.notes.begin(), notes.begin(), notes.end());
                return v;
            },
            [&](const Legendre& lf) {
                std::vector<std::string> notes;
                const GaloisNumber n = detail::snapped_index(lf.a, E, "n", snap_tol, max_den, notes);
                GaloisNumber m = GaloisNumber::complex_marker();
                if (lf.b < 0.0)
                    notes.push_back("mu is imaginary: mu^2 = b/(2E) = " +
                                    detail::fmt_g(lf.b / (2.0 * E)) + " < 0");
                else
                    m = detail::snap_reduced(std::sqrt(lf.b / (2.0 * E)), "mu", snap_tol, max_den,
                                             notes);
                IntegrabilityVerdict v = classify_legendre(m, n);
                v.spectrum =
                    lf.a > 0 ? "E_n = a/(2 n (n+1)), n = 1, 2, ..." : "empty (a <= 0)";
                v.notes.insert(v.notes.begin(), notes.begin(), notes.end());
                return v;
            },
            [&](const Lame& lm) {
                std::vector<std::string> notes;
                const GaloisNumber n = detail::snapped_index(lm.a, E, "n", snap_tol, max_den, notes);
                IntegrabilityVerdict v = classify_lame(n, lm.b / (2.0 * E), lm.ed);
                v.spectrum =
                    lm.a > 0 ? "E_n = a/(2 n (n+1)), n = 1, 2, ..." : "empty (a <= 0)";
                v.notes.insert(v.notes.begin(), notes.begin(), notes.end());
                return v;
            }},
        f);
}

}  // namespace wkb
