#pragma once

// Potential families, constant-velocity paths, energy levels with
// reduced parameters, and the admissible-energy spectra.

#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "wkb/common.hpp"
#include "wkb/elliptic.hpp"

namespace wkb {

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace detail

// ---- families -------------------------------------------------------

struct Constant {
    double omega = 0.0;
    explicit Constant(double omega_) : omega(require_finite(omega_, "omega")) {}
};

struct Hermite {
    double a = 1.0;
    explicit Hermite(double a_) : a(require_finite(a_, "a")) {
        if (a == 0.0) throw bad_input("Hermite family: a must be nonzero");
    }
};

struct Bessel {
    double a = 1.0, b = 0.0;
    Bessel(double a_, double b_) : a(require_finite(a_, "a")), b(require_finite(b_, "b")) {
        if (a == 0.0) throw bad_input("Bessel family: a must be nonzero");
    }
};

struct Legendre {
    double a = 1.0, b = 0.0;
    Legendre(double a_, double b_) : a(require_finite(a_, "a")), b(require_finite(b_, "b")) {
        if (a == 0.0) throw bad_input("Legendre family: a must be nonzero");
    }
};

struct Lame {
    double a = 1.0, b = 0.0, g2 = 0.0, g3 = 0.0;
    EllipticData ed;  // validates delta > 0 at construction
    Lame(double a_, double b_, double g2_, double g3_)
        : a(require_finite(a_, "a")),
          b(require_finite(b_, "b")),
          g2(g2_),
          g3(g3_),
          ed(elliptic_setup(g2_, g3_)) {
        if (a == 0.0) throw bad_input("Lame family: a must be nonzero");
    }
};

using FamilySpec = std::variant<Constant, Hermite, Bessel, Legendre, Lame>;

inline const char* family_name(const FamilySpec& f) {
    return std::visit(detail::overloaded{[](const Constant&) { return "constant"; },
                                         [](const Hermite&) { return "hermite"; },
                                         [](const Bessel&) { return "bessel"; },
                                         [](const Legendre&) { return "legendre"; },
                                         [](const Lame&) { return "lame"; }},
                      f);
}

// ---- paths ----------------------------------------------------------

struct PathSpec {
    double x0 = 0.0, x1 = 1.0, t1 = 1.0;
    PathSpec(double x0_, double x1_, double t1_)
        : x0(require_finite(x0_, "x0")), x1(require_finite(x1_, "x1")), t1(require_finite(t1_, "t1")) {
        if (!(t1 > 0.0)) throw bad_input("path: t1 must be positive");
        if (x1 == x0) throw bad_input("path: x1 must differ from x0 (paths carry positive energy)");
    }
    double velocity() const { return (x1 - x0) / t1; }
    double energy() const {
        const double v = velocity();
        return 0.5 * v * v;
    }
};

inline double path_energy(const PathSpec& p) { return p.energy(); }

// Path with prescribed energy: x1 = x0 + dir * sqrt(2E) * t1.
inline PathSpec path_from_energy(double x0, double t1, double E, int direction = +1) {
    if (!(E > 0.0) || !std::isfinite(E)) throw bad_input("path_from_energy: E must be positive");
    const double v = (direction >= 0 ? 1.0 : -1.0) * std::sqrt(2.0 * E);
    return PathSpec(x0, x0 + v * t1, t1);
}

// Family-dependent path restrictions (beyond the PathSpec invariants).
inline void validate_path(const FamilySpec& f, const PathSpec& p) {
    if (std::holds_alternative<Bessel>(f)) {
        if (p.x0 == 0.0 || p.x1 == 0.0 || (p.x0 < 0.0) != (p.x1 < 0.0))
            throw bad_input("path: Bessel paths must not touch or cross x = 0");
    }
}

// ---- variational coefficient ---------------------------------------

// 2 f(x, 0): coefficient of xi in the normal variational equation,
// as a function of position along the invariant plane.
inline double coefficient_at(const FamilySpec& f, double x) {
    require_finite(x, "position");
    return std::visit(
        detail::overloaded{
            [](const Constant& c) { return c.omega; },
            [&](const Hermite& h) { return 1.0 - h.a * x * x; },
            [&](const Bessel& bf) {
                if (x == 0.0)
                    throw singular_coefficient_error("Bessel coefficient singular at x = 0");
                return bf.b - bf.a / (x * x);
            },
            [&](const Legendre& lf) {
                const double c = std::cosh(x);
                return -lf.b + lf.a / (c * c);
            },
            [&](const Lame& lm) { return -lm.b - lm.a * wp_shifted(x, lm.ed); }},
        f);
}

// Same coefficient on the positive-velocity path x_E(t) = sqrt(2E) t + x0.
inline double coefficient(const FamilySpec& f, double E, double x0, double t) {
    if (!(E > 0.0) || !std::isfinite(E)) throw bad_input("coefficient: E must be positive");
    require_finite(x0, "x0");
    require_finite(t, "t");
    return coefficient_at(f, std::sqrt(2.0 * E) * t + x0);
}

// ---- energy levels --------------------------------------------------

struct ConstantLevel {};
struct HermiteLevel {
    double lambda = 0.0;  // lambda = 1/sqrt(2 E a); admissible when 2m+1
};
struct BesselLevel {
    double nu = 0.0;     // nu(nu+1) = a/(2E); NaN when complex
    double mu_sq = 0.0;  // mu^2 = b/(2E)
};
struct LegendreLevel {
    double nu = 0.0;
    double mu_sq = 0.0;
};
struct LameLevel {
    double n = 0.0;  // n(n+1) = a/(2E); NaN when complex
    double B = 0.0;  // B = b/(2E)
};

struct EnergyLevel {
    double E = 0.0;
    int index = -1;  // spectral index m or n; -1 when not a spectrum member
    std::variant<ConstantLevel, HermiteLevel, BesselLevel, LegendreLevel, LameLevel> reduced;
};

namespace detail {
// Larger root of nu(nu+1) = c, or NaN if complex.
inline double nu_from_ratio(double c) {
    const double disc = 1.0 + 4.0 * c;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 0.5 * (-1.0 + std::sqrt(disc));
}
inline int near_positive_integer(double v) {
    if (!std::isfinite(v) || v < 0.5) return -1;
    const double k = std::round(v);
    return std::abs(v - k) <= 1e-9 * std::max(1.0, k) ? int(k) : -1;
}
}  // namespace detail

// Reduced parameters for an arbitrary positive energy; index is filled
// when the energy lies on the family's admissible ladder.
inline EnergyLevel level_for_energy(const FamilySpec& f, double E) {
    if (!(E > 0.0) || !std::isfinite(E)) throw bad_input("level_for_energy: E must be positive");
    EnergyLevel lv;
    lv.E = E;
    std::visit(detail::overloaded{
                   [&](const Constant&) { lv.reduced = ConstantLevel{}; },
                   [&](const Hermite& h) {
                       const double prod = 2.0 * E * h.a;
                       const double lambda =
                           prod > 0.0 ? 1.0 / std::sqrt(prod) : std::numeric_limits<double>::quiet_NaN();
                       lv.reduced = HermiteLevel{lambda};
                       const int k = detail::near_positive_integer(lambda);
                       if (k >= 1 && k % 2 == 1) lv.index = (k - 1) / 2;
                   },
                   [&](const Bessel& bf) {
                       const double nu = detail::nu_from_ratio(bf.a / (2.0 * E));
                       lv.reduced = BesselLevel{nu, bf.b / (2.0 * E)};
                       const int n = detail::near_positive_integer(nu);
                       if (n >= 1) lv.index = n;
                   },
                   [&](const Legendre& lf) {
                       const double nu = detail::nu_from_ratio(lf.a / (2.0 * E));
                       lv.reduced = LegendreLevel{nu, lf.b / (2.0 * E)};
                       const int n = detail::near_positive_integer(nu);
                       if (n >= 1) lv.index = n;
                   },
                   [&](const Lame& lm) {
                       const double n = detail::nu_from_ratio(lm.a / (2.0 * E));
                       lv.reduced = LameLevel{n, lm.b / (2.0 * E)};
                       const int k = detail::near_positive_integer(n);
                       if (k >= 1) lv.index = k;
                   }},
               f);
    return lv;
}

// First `count` admissible energies, decreasing in E.
inline std::vector<EnergyLevel> admissible_energies(const FamilySpec& f, int count) {
    if (count <= 0) throw bad_input("admissible_energies: count must be positive");
    std::vector<EnergyLevel> out;
    out.reserve(std::size_t(count));
    std::visit(
        detail::overloaded{
            [&](const Constant&) -> void {
                throw domain_error(
                    "constant family: integrable for every E; no discrete admissible spectrum");
            },
            [&](const Hermite& h) {
                if (h.a <= 0.0)
                    throw domain_error("Hermite family: admissible spectrum is empty for a <= 0");
                for (int m = 0; m < count; ++m) {
                    const double k = 2.0 * m + 1.0;
                    EnergyLevel lv;
                    lv.E = 0.5 / (h.a * k * k);
                    lv.index = m;
                    lv.reduced = HermiteLevel{k};
                    out.push_back(lv);
                }
            },
            [&](const Bessel& bf) {
                if (bf.a <= 0.0)
                    throw domain_error(
                        "Bessel family: no integer-order levels exist for a <= 0 "
                        "(nu(nu+1) = a/(2E) < 0 has no integer solution)");
                for (int n = 1; n <= count; ++n) {
                    EnergyLevel lv;
                    lv.E = bf.a / (2.0 * n * (n + 1.0));
                    lv.index = n;
                    lv.reduced = BesselLevel{double(n), bf.b / (2.0 * lv.E)};
                    out.push_back(lv);
                }
            },
            [&](const Legendre& lf) {
                if (lf.a <= 0.0)
                    throw domain_error("Legendre family: admissible spectrum is empty for a <= 0");
                for (int n = 1; n <= count; ++n) {
                    EnergyLevel lv;
                    lv.E = lf.a / (2.0 * n * (n + 1.0));
                    lv.index = n;
                    lv.reduced = LegendreLevel{double(n), lf.b / (2.0 * lv.E)};
                    out.push_back(lv);
                }
            },
            [&](const Lame& lm) {
                if (lm.a <= 0.0)
                    throw domain_error("Lame family: admissible spectrum is empty for a <= 0");
                for (int n = 1; n <= count; ++n) {
                    EnergyLevel lv;
                    lv.E = lm.a / (2.0 * n * (n + 1.0));
                    lv.index = n;
                    lv.reduced = LameLevel{double(n), lm.b / (2.0 * lv.E)};
                    out.push_back(lv);
                }
            }},
        f);
    return out;
}

}  // namespace wkb
