#pragma once

// Closed-form Liouvillian bases of the normal variational equation at
// integrable levels, and the phi12 matrix element computed from them.
//
// Everything here is gated by the classifier: a level the Galois
// analysis rejects never reaches a formula. Levels the theory accepts
// but this implementation cannot evaluate (imaginary mu, mid-window
// polynomial nodes, Lame n >= 2, ...) raise domain_error so callers can
// fall back to the numerical route.

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "wkb/bessel.hpp"
#include "wkb/elliptic.hpp"
#include "wkb/erfi.hpp"
#include "wkb/family.hpp"
#include "wkb/galois.hpp"
#include "wkb/hermite.hpp"
#include "wkb/legendre.hpp"
#include "wkb/polynomial.hpp"
#include "wkb/quadrature.hpp"

namespace wkb {

enum class FocalCheck { strict, ignore };

struct AffineMap {
    double scale = 1.0, offset = 0.0;
    bool add_omega3 = false;  // canonical variable lives on the omega3-shifted branch
    double operator()(double t) const { return scale * t + offset; }
};

struct BasisPair {
    std::function<double(double)> xi1, xi2;    // solutions of xi'' + c(t) xi = 0
    std::function<double(double)> dxi1, dxi2;  // their time derivatives
    double wronskian = 0.0;                    // xi1 dxi2 - xi2 dxi1, constant in t
};

namespace detail {

inline std::string cite(const IntegrabilityVerdict& v) {
    std::string s = std::string(to_string(v.status)) + " (case " + v.case_id + ")";
    if (!v.notes.empty()) s += ": " + v.notes.back();
    return s;
}

template <class LevelT>
const LevelT& level_as(const EnergyLevel& level) {
    const auto* p = std::get_if<LevelT>(&level.reduced);
    if (!p) throw bad_input("energy level does not belong to this family");
    return *p;
}

inline long long level_integer(double x, const char* what) {
    const long long k = std::llround(x);
    if (!std::isfinite(x) || std::abs(x - double(k)) > 1e-9 * std::max(1.0, std::abs(x)))
        throw domain_error(std::string(what) + " is not integral at this level");
    return k;
}

}  // namespace detail

// Classifier gate shared by every closed-form entry point.
inline IntegrabilityVerdict require_liouvillian(const FamilySpec& f, double E) {
    const IntegrabilityVerdict v = classify(f, E);
    if (v.status == IntegrabilityStatus::NonIntegrable ||
        v.status == IntegrabilityStatus::Conditional)
        throw not_integrable_error("no closed-form basis at this level: classifier verdict " +
                                   detail::cite(v));
    return v;
}

inline void check_level_path(const EnergyLevel& level, const PathSpec& path) {
    if (std::abs(level.E - path.energy()) > 1e-9 * std::max(1.0, std::abs(level.E)))
        throw bad_input("level energy and path energy disagree");
}

// Affine substitution turning the variational equation into the
// family's canonical ODE.
inline AffineMap time_rescale(const FamilySpec& f, const EnergyLevel& level, double x0,
                              int direction = +1) {
    require_finite(x0, "x0");
    if (!(level.E > 0.0) || !std::isfinite(level.E))
        throw bad_input("time_rescale: level energy must be positive");
    const double v = (direction >= 0 ? 1.0 : -1.0) * std::sqrt(2.0 * level.E);
    return std::visit(
        detail::overloaded{
            [&](const Constant&) -> AffineMap {
                throw bad_input("time_rescale: the constant family is already canonical");
            },
            [&](const Hermite& h) -> AffineMap {
                if (h.a <= 0.0) throw domain_error("time_rescale: needs a > 0");
                const double alpha = std::pow(h.a / (2.0 * level.E), 0.25);
                return {alpha * v, alpha * x0, false};
            },
            [&](const Bessel&) -> AffineMap { return {v, x0, false}; },
            [&](const Legendre&) -> AffineMap { return {v, x0, false}; },
            [&](const Lame&) -> AffineMap { return {v, x0, true}; }},
        f);
}

// ---- family-specific phi12 fast paths ------------------------------

namespace detail {

inline double phi12_constant(const Constant& c, const PathSpec& p) {
    if (c.omega > 0.0) {
        const double r = std::sqrt(c.omega);
        return std::sin(r * p.t1) / r;
    }
    if (c.omega == 0.0) return p.t1;
    const double r = std::sqrt(-c.omega);
    return std::sinh(r * p.t1) / r;
}

struct HermiteFrame {
    int m = 0;
    Polynomial P, Pp;
    double av = 0.0;  // alpha * v, the ds/dt rate (signed)
    double s0 = 0.0, s1 = 0.0;
};

inline bool near_poly_zero(const Polynomial& P, double s) {
    double scale = 0.0, pw = 1.0;
    for (double c : P.coeffs) {
        scale += std::abs(c) * pw;
        pw *= std::max(1.0, std::abs(s));
    }
    return std::abs(P(s)) <= 1e-11 * std::max(1.0, scale);
}

inline HermiteFrame hermite_frame(const Hermite& h, const EnergyLevel& level, double x0,
                                  double v) {
    if (h.a <= 0.0) throw domain_error("polynomial closed form needs a > 0");
    const auto& hl = level_as<HermiteLevel>(level);
    const long long k = level_integer(hl.lambda, "lambda");
    if (k < 1 || k % 2 == 0) throw domain_error("level is not on the odd ladder");
    HermiteFrame fr;
    fr.m = int((k - 1) / 2);
    fr.P = hermite_poly(fr.m);
    fr.Pp = fr.P.derivative();
    const double alpha = std::pow(h.a / (2.0 * level.E), 0.25);
    fr.av = alpha * v;
    fr.s0 = alpha * x0;
    fr.s1 = fr.s0;  // callers that know t1 advance this
    return fr;
}

inline double hermite_weight_integral(const HermiteFrame& fr) {
    if (std::max(std::abs(fr.s0), std::abs(fr.s1)) > 26.0)
        throw domain_error("path image too wide for the quadrature representation");
    if (fr.m == 0) return std::sqrt(pi) / 2.0 * (erfi(fr.s1) - erfi(fr.s0));
    const Polynomial& P = fr.P;
    return integrate(
        [&](double z) {
            const double pz = P(z);
            return std::exp(z * z) / (pz * pz);
        },
        fr.s0, fr.s1, 1e-12);
}

inline double phi12_hermite(const Hermite& h, const EnergyLevel& level, const PathSpec& p) {
    HermiteFrame fr = hermite_frame(h, level, p.x0, p.velocity());
    fr.s1 = fr.s0 + fr.av * p.t1;
    const bool z0 = near_poly_zero(fr.P, fr.s0);
    const bool z1 = near_poly_zero(fr.P, fr.s1);
    if (z0 && z1) return 0.0;  // both endpoints on nodes: exact focal value
    if (z0)
        return fr.P(fr.s1) * std::exp(0.5 * (fr.s0 * fr.s0 - fr.s1 * fr.s1)) /
               (fr.av * fr.Pp(fr.s0));
    if (z1)
        return -fr.P(fr.s0) * std::exp(0.5 * (fr.s1 * fr.s1 - fr.s0 * fr.s0)) /
               (fr.av * fr.Pp(fr.s1));
    const double lo = std::min(fr.s0, fr.s1), hi = std::max(fr.s0, fr.s1);
    const double pad = 1e-9 * std::max(1.0, hi - lo);
    if (!real_roots_in(fr.P, lo + pad, hi - pad).empty())
        throw domain_error(
            "quadrature window exceeded: the polynomial vanishes strictly inside the path "
            "image; use the oracle");
    const double I = hermite_weight_integral(fr);
    return fr.P(fr.s0) * fr.P(fr.s1) * std::exp(-0.5 * (fr.s0 * fr.s0 + fr.s1 * fr.s1)) * I /
           fr.av;
}

inline double phi12_bessel(const Bessel& bf, const EnergyLevel& level, const PathSpec& p) {
    const auto& bl = level_as<BesselLevel>(level);
    const double v = p.velocity();
    const double sgn = p.x0 > 0.0 ? 1.0 : -1.0;
    const double u0 = std::abs(p.x0), u1 = std::abs(p.x1);
    if (bf.b == 0.0) {
        const double nu = bl.nu;
        if (std::isnan(nu))
            throw domain_error(
                "equidimensional exponents are complex (1 + 2a/E < 0); use the oracle");
        if (std::abs(nu + 0.5) <= 1e-12)
            return std::sqrt(u0 * u1) * std::log(u1 / u0) / (sgn * v);
        return (std::pow(u1, nu + 1.0) * std::pow(u0, -nu) -
                std::pow(u0, nu + 1.0) * std::pow(u1, -nu)) /
               (sgn * v * (2.0 * nu + 1.0));
    }
    if (bf.b < 0.0)
        throw domain_error("imaginary mu (b < 0) has no closed form here; use the oracle");
    const int n = int(level_integer(bl.nu, "nu"));
    const double mu = std::sqrt(bl.mu_sq);
    const double j0 = bessel_half(BesselKind::J, n, mu * u0);
    const double j1 = bessel_half(BesselKind::J, n, mu * u1);
    const double y0 = bessel_half(BesselKind::Y, n, mu * u0);
    const double y1 = bessel_half(BesselKind::Y, n, mu * u1);
    return pi / (2.0 * sgn * v) * std::sqrt(u0 * u1) * (j0 * y1 - y0 * j1);
}

inline double phi12_legendre(const Legendre& lf, const EnergyLevel& level, const PathSpec& p) {
    if (lf.b != 0.0)
        throw domain_error("only the b = 0 row has a closed form here; use the oracle");
    const auto& ll = level_as<LegendreLevel>(level);
    const int n = int(level_integer(ll.nu, "n"));
    const double z0 = std::tanh(p.x0), z1 = std::tanh(p.x1);
    if (std::abs(z0) >= 1.0 || std::abs(z1) >= 1.0)
        throw domain_error("path endpoint so deep in the tail that tanh rounds to +-1");
    return (legendre_p(n, z0) * legendre_q(n, z1) - legendre_q(n, z0) * legendre_p(n, z1)) /
           p.velocity();
}

// sinh(sqrt(z))/sqrt(z), continued through z <= 0 as sin(sqrt(-z))/sqrt(-z).
inline double sq_sinhc(double z) {
    if (std::abs(z) < 1e-10) return 1.0 + z / 6.0 + z * z / 120.0;
    if (z > 0.0) {
        const double r = std::sqrt(z);
        return std::sinh(r) / r;
    }
    const double r = std::sqrt(-z);
    return std::sin(r) / r;
}

inline void lame_check_weight(const EllipticData& ed, double B, double h) {
    if (B >= ed.e3 && B <= ed.e2)
        throw domain_error(
            "B lies in [e3, e2]: the basis weight B - wp vanishes on the real branch; use the "
            "oracle");
    if (h == 0.0)
        throw domain_error(
            "degenerate resolvent h(B) = 0: the exponential pair collapses; use the oracle");
}

// Normalized by the Wronskian of the exponential pair itself,
// |D| = |v| sqrt(h(B)).  Tables normalizing by 2 sqrt(h(B)) differ
// from this value by a factor 2.
inline double phi12_lame(const Lame& lm, const EnergyLevel& level, const PathSpec& p) {
    const auto& ll = level_as<LameLevel>(level);
    if (level_integer(ll.n, "n") != 1)
        throw domain_error("closed form implemented for n = 1 only; use the oracle");
    const EllipticData& ed = lm.ed;
    const double B = ll.B;
    const double h = ((4.0 * B) * B - ed.g2) * B - ed.g3;
    lame_check_weight(ed, B, h);
    const double v = p.velocity();
    const double w0 = B - wp_shifted(p.x0, ed);
    const double w1 = B - wp_shifted(p.x1, ed);
    const double A1 = integrate(
        [&](double t) { return 1.0 / (B - wp_shifted(p.x0 + v * t, ed)); }, 0.0, p.t1, 1e-12);
    const double z = 0.25 * v * v * h * A1 * A1;  // (kappa * A1)^2, sign of h
    const double sgnw = w0 > 0.0 ? 1.0 : -1.0;
    return sgnw * std::sqrt(std::abs(w0 * w1)) * A1 * sq_sinhc(z);
}

}  // namespace detail

// phi12(t1) by the determinant rule applied to the family's closed
// basis, through the specialized per-family expressions.
inline double phi12_closed(const FamilySpec& f, const EnergyLevel& level, const PathSpec& path,
                           FocalCheck check = FocalCheck::strict) {
    check_level_path(level, path);
    validate_path(f, path);
    require_liouvillian(f, level.E);
    const double phi = std::visit(
        detail::overloaded{
            [&](const Constant& c) { return detail::phi12_constant(c, path); },
            [&](const Hermite& h) { return detail::phi12_hermite(h, level, path); },
            [&](const Bessel& b) { return detail::phi12_bessel(b, level, path); },
            [&](const Legendre& l) { return detail::phi12_legendre(l, level, path); },
            [&](const Lame& lm) { return detail::phi12_lame(lm, level, path); }},
        f);
    if (check == FocalCheck::strict && std::abs(phi) <= 1e-9 * path.t1)
        throw focal_point_error("FocalPoint: phi12 vanishes at t1, the prefactor is undefined");
    return phi;
}

// Largest t1 for which the quadrature representation stays clear of
// polynomial nodes when starting from x0; +inf when unconstrained
// (start on a node, or no node ahead).
inline double hermite_quadrature_window(const Hermite& h, const EnergyLevel& level, double x0,
                                        int direction = +1) {
    const double v = (direction >= 0 ? 1.0 : -1.0) * std::sqrt(2.0 * level.E);
    const auto fr = detail::hermite_frame(h, level, x0, v);
    if (detail::near_poly_zero(fr.P, fr.s0)) return std::numeric_limits<double>::infinity();
    if (fr.m == 0) return std::numeric_limits<double>::infinity();
    const double reach = std::sqrt(2.0 * fr.m + 1.0) + 2.0;  // all nodes lie well inside
    double best = std::numeric_limits<double>::infinity();
    for (double z : real_roots_in(fr.P, -reach, reach)) {
        const double d = (z - fr.s0) / fr.av;
        if (d > 0.0) best = std::min(best, d);
    }
    return best;
}

// The evaluable solution pair itself. xi2 may be representable only on
// a sub-window (polynomial families); evaluation outside raises.
inline BasisPair closed_form_basis(const FamilySpec& f, const EnergyLevel& level,
                                   const PathSpec& path) {
    check_level_path(level, path);
    validate_path(f, path);
    require_liouvillian(f, level.E);
    const double v = path.velocity();
    return std::visit(
        detail::overloaded{
            [&](const Constant& c) -> BasisPair {
                BasisPair b;
                if (c.omega > 0.0) {
                    const double r = std::sqrt(c.omega);
                    b.xi1 = [r](double t) { return std::cos(r * t); };
                    b.xi2 = [r](double t) { return std::sin(r * t) / r; };
                    b.dxi1 = [r](double t) { return -r * std::sin(r * t); };
                    b.dxi2 = [r](double t) { return std::cos(r * t); };
                } else if (c.omega == 0.0) {
                    b.xi1 = [](double) { return 1.0; };
                    b.xi2 = [](double t) { return t; };
                    b.dxi1 = [](double) { return 0.0; };
                    b.dxi2 = [](double) { return 1.0; };
                } else {
                    const double r = std::sqrt(-c.omega);
                    b.xi1 = [r](double t) { return std::cosh(r * t); };
                    b.xi2 = [r](double t) { return std::sinh(r * t) / r; };
                    b.dxi1 = [r](double t) { return r * std::sinh(r * t); };
                    b.dxi2 = [r](double t) { return std::cosh(r * t); };
                }
                b.wronskian = 1.0;
                return b;
            },
            [&](const Hermite& h) -> BasisPair {
                auto fr = detail::hermite_frame(h, level, path.x0, v);
                fr.s1 = fr.s0 + fr.av * path.t1;
                // reference point for the reduction-of-order integral
                double sref = fr.s0;
                if (detail::near_poly_zero(fr.P, sref)) sref = fr.s1;
                if (detail::near_poly_zero(fr.P, sref))
                    throw domain_error(
                        "both path endpoints sit on polynomial nodes; no regular reference "
                        "point for the second solution");
                const Polynomial P = fr.P, Pp = fr.Pp;
                const double av = fr.av, s0 = fr.s0;
                const int m = fr.m;
                auto s_of = [av, s0](double t) { return s0 + av * t; };
                auto integral = [P, m, sref](double s) {
                    if (m == 0) return std::sqrt(pi) / 2.0 * (erfi(s) - erfi(sref));
                    return integrate(
                        [&](double z) {
                            const double pz = P(z);
                            return std::exp(z * z) / (pz * pz);
                        },
                        sref, s, 1e-12);
                };
                BasisPair b;
                b.xi1 = [P, s_of](double t) {
                    const double s = s_of(t);
                    return P(s) * std::exp(-0.5 * s * s);
                };
                b.dxi1 = [P, Pp, av, s_of](double t) {
                    const double s = s_of(t);
                    return av * (Pp(s) - s * P(s)) * std::exp(-0.5 * s * s);
                };
                b.xi2 = [P, s_of, integral](double t) {
                    const double s = s_of(t);
                    return P(s) * std::exp(-0.5 * s * s) * integral(s);
                };
                b.dxi2 = [P, Pp, av, s_of, integral](double t) {
                    const double s = s_of(t);
                    const double e = std::exp(-0.5 * s * s);
                    return av * ((Pp(s) - s * P(s)) * e * integral(s) +
                                 std::exp(0.5 * s * s) / P(s));
                };
                b.wronskian = av;
                return b;
            },
            [&](const Bessel& bf) -> BasisPair {
                const auto& bl = detail::level_as<BesselLevel>(level);
                const double sgn = path.x0 > 0.0 ? 1.0 : -1.0;
                const double x0 = path.x0;
                auto u_of = [x0, v](double t) { return std::abs(x0 + v * t); };
                const double du = sgn * v;
                BasisPair b;
                if (bf.b == 0.0) {
                    const double nu = bl.nu;
                    if (std::isnan(nu))
                        throw domain_error(
                            "equidimensional exponents are complex (1 + 2a/E < 0); use the "
                            "oracle");
                    if (std::abs(nu + 0.5) <= 1e-12) {
                        b.xi1 = [u_of](double t) { return std::sqrt(u_of(t)); };
                        b.xi2 = [u_of](double t) {
                            const double u = u_of(t);
                            return std::sqrt(u) * std::log(u);
                        };
                        b.dxi1 = [u_of, du](double t) {
                            return du / (2.0 * std::sqrt(u_of(t)));
                        };
                        b.dxi2 = [u_of, du](double t) {
                            const double u = u_of(t);
                            return du * (std::log(u) / (2.0 * std::sqrt(u)) + 1.0 / std::sqrt(u));
                        };
                        b.wronskian = du;
                        return b;
                    }
                    b.xi1 = [u_of, nu](double t) { return std::pow(u_of(t), nu + 1.0); };
                    b.xi2 = [u_of, nu](double t) { return std::pow(u_of(t), -nu); };
                    b.dxi1 = [u_of, du, nu](double t) {
                        return du * (nu + 1.0) * std::pow(u_of(t), nu);
                    };
                    b.dxi2 = [u_of, du, nu](double t) {
                        return -du * nu * std::pow(u_of(t), -nu - 1.0);
                    };
                    b.wronskian = -du * (2.0 * nu + 1.0);
                    return b;
                }
                if (bf.b < 0.0)
                    throw domain_error(
                        "imaginary mu (b < 0) has no closed form here; use the oracle");
                const int n = int(detail::level_integer(bl.nu, "nu"));
                const double mu = std::sqrt(bl.mu_sq);
                // C'_{n+1/2}(x) = C_{n-1+1/2}(x) - (n+1/2)/x * C_{n+1/2}(x)
                auto make = [&](BesselKind kind) {
                    auto f_ = [u_of, mu, n, kind](double t) {
                        const double u = u_of(t);
                        return std::sqrt(u) * bessel_half(kind, n, mu * u);
                    };
                    auto df = [u_of, du, mu, n, kind](double t) {
                        const double u = u_of(t);
                        const double x = mu * u;
                        const double c = bessel_half(kind, n, x);
                        const double cp = bessel_half(kind, n - 1, x) - (n + 0.5) / x * c;
                        return du * (c / (2.0 * std::sqrt(u)) + std::sqrt(u) * mu * cp);
                    };
                    return std::pair(std::function<double(double)>(f_),
                                     std::function<double(double)>(df));
                };
                auto [j, dj] = make(BesselKind::J);
                auto [y, dy] = make(BesselKind::Y);
                b.xi1 = j;
                b.xi2 = y;
                b.dxi1 = dj;
                b.dxi2 = dy;
                b.wronskian = du * 2.0 / pi;
                return b;
            },
            [&](const Legendre& lf) -> BasisPair {
                if (lf.b != 0.0)
                    throw domain_error(
                        "only the b = 0 row has a closed form here; use the oracle");
                const auto& ll = detail::level_as<LegendreLevel>(level);
                const int n = int(detail::level_integer(ll.nu, "n"));
                const double x0 = path.x0;
                auto z_of = [x0, v](double t) { return std::tanh(x0 + v * t); };
                BasisPair b;
                b.xi1 = [z_of, n](double t) { return legendre_p(n, z_of(t)); };
                b.xi2 = [z_of, n](double t) { return legendre_q(n, z_of(t)); };
                b.dxi1 = [z_of, n, v](double t) {
                    const double z = z_of(t);
                    return legendre_p_prime(n, z) * (1.0 - z * z) * v;
                };
                b.dxi2 = [z_of, n, v](double t) {
                    const double z = z_of(t);
                    return legendre_q_prime(n, z) * (1.0 - z * z) * v;
                };
                b.wronskian = v;
                return b;
            },
            [&](const Lame& lm) -> BasisPair {
                const auto& ll = detail::level_as<LameLevel>(level);
                if (detail::level_integer(ll.n, "n") != 1)
                    throw domain_error("closed form implemented for n = 1 only; use the oracle");
                const EllipticData ed = lm.ed;
                const double B = ll.B;
                const double h = ((4.0 * B) * B - ed.g2) * B - ed.g3;
                detail::lame_check_weight(ed, B, h);
                const double x0 = path.x0;
                auto w_of = [B, ed, x0, v](double t) { return B - wp_shifted(x0 + v * t, ed); };
                auto dw = [ed, x0, v](double t) { return -v * wp_shifted_deriv(x0 + v * t, ed); };
                auto A_of = [w_of](double t) {
                    return integrate([&](double tt) { return 1.0 / w_of(tt); }, 0.0, t, 1e-12);
                };
                BasisPair b;
                const double q = 0.25 * v * v * h;  // kappa^2
                if (q > 0.0) {
                    const double kappa = (v >= 0.0 ? 1.0 : -1.0) * std::sqrt(q);
                    auto expo = [w_of, dw, A_of, kappa](double t, double sign) {
                        const double w = w_of(t);
                        return std::pair(std::sqrt(w) * std::exp(sign * kappa * A_of(t)),
                                         (dw(t) / (2.0 * std::sqrt(w)) +
                                          sign * kappa / std::sqrt(w)) *
                                             std::exp(sign * kappa * A_of(t)));
                    };
                    b.xi1 = [expo](double t) { return expo(t, +1.0).first; };
                    b.dxi1 = [expo](double t) { return expo(t, +1.0).second; };
                    b.xi2 = [expo](double t) { return expo(t, -1.0).first; };
                    b.dxi2 = [expo](double t) { return expo(t, -1.0).second; };
                    b.wronskian = -2.0 * kappa;
                } else {
                    const double ak = std::sqrt(-q);
                    const double sgnw = w_of(0.0) > 0.0 ? 1.0 : -1.0;
                    b.xi1 = [w_of, A_of, ak](double t) {
                        return std::sqrt(std::abs(w_of(t))) * std::cos(ak * A_of(t));
                    };
                    b.xi2 = [w_of, A_of, ak](double t) {
                        return std::sqrt(std::abs(w_of(t))) * std::sin(ak * A_of(t));
                    };
                    b.dxi1 = [w_of, dw, A_of, ak, sgnw](double t) {
                        const double aw = std::abs(w_of(t));
                        const double th = ak * A_of(t);
                        return sgnw * dw(t) / (2.0 * std::sqrt(aw)) * std::cos(th) -
                               std::sqrt(aw) * std::sin(th) * ak / w_of(t);
                    };
                    b.dxi2 = [w_of, dw, A_of, ak, sgnw](double t) {
                        const double aw = std::abs(w_of(t));
                        const double th = ak * A_of(t);
                        return sgnw * dw(t) / (2.0 * std::sqrt(aw)) * std::sin(th) +
                               std::sqrt(aw) * std::cos(th) * ak / w_of(t);
                    };
                    b.wronskian = sgnw * ak;
                }
                return b;
            }},
        f);
}

// The determinant rule applied verbatim to any solution pair; agrees
// with phi12_closed and is invariant under rescaling either element.
inline double phi12_from_basis(const BasisPair& basis, double t1) {
    const double a0 = basis.xi1(0.0), b0 = basis.xi2(0.0);
    const double a1 = basis.xi1(t1), b1 = basis.xi2(t1);
    const double d = a0 * basis.dxi2(0.0) - b0 * basis.dxi1(0.0);
    return (a0 * b1 - b0 * a1) / d;
}

}  // namespace wkb
