#pragma once

// Real-lattice Weierstrass data: root solving, half-periods via the
// arithmetic-geometric mean, and the shifted function p(x + omega3),
// which is real, bounded and regular for real x.

#include <algorithm>
#include <cmath>

#include "wkb/common.hpp"

namespace wkb {

struct EllipticData {
    double g2 = 0.0, g3 = 0.0;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;  // roots of 4e^3 - g2 e - g3, descending
    double omega1 = 0.0;                  // real half-period
    double omega3_im = 0.0;               // omega3 = i * omega3_im
    double delta = 0.0;                   // g2^3 - 27 g3^2
};

namespace detail {

inline double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * (a + b); ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

// Complete elliptic integral K as a function of the parameter m = k^2.
inline double elliptic_K(double m) { return pi / (2.0 * agm(1.0, std::sqrt(1.0 - m))); }

// Jacobi sn(u | m) for u in [0, K(m)], by the descending-AGM phase
// recursion.  Relative accuracy is near machine precision for the
// moderate parameters a positive-discriminant lattice produces.
inline double jacobi_sn(double u, double m) {
    if (m == 0.0) return std::sin(u);
    double a = 1.0, b = std::sqrt(1.0 - m);
    double as[64], cs[64];
    int levels = 0;
    for (int n = 1; n < 62; ++n) {
        const double an = 0.5 * (a + b);
        const double cn = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        as[n] = a;
        cs[n] = cn;
        levels = n;
        if (cn <= 1e-17 * a) break;
    }
    double phi = std::ldexp(1.0, levels) * a * u;
    for (int n = levels; n >= 1; --n) {
        const double t = std::clamp(cs[n] / as[n] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(t));
    }
    return std::sin(phi);
}

}  // namespace detail

inline EllipticData elliptic_setup(double g2, double g3) {
    require_finite(g2, "g2");
    require_finite(g3, "g3");
    const double delta = g2 * g2 * g2 - 27.0 * g3 * g3;
    if (!(delta > 0.0))
        throw bad_input(
            "elliptic_setup: discriminant g2^3 - 27 g3^2 must be positive "
            "(only the real-lattice case is supported)");

    // 4e^3 - g2 e - g3 = 0, i.e. e^3 + p e + q with p = -g2/4, q = -g3/4.
    // delta > 0 forces g2 > 0, so p < 0 and the trigonometric form applies.
    const double p = -0.25 * g2, q = -0.25 * g3;
    const double r = std::sqrt(-p / 3.0);
    const double u = std::clamp(3.0 * q / (2.0 * p * r), -1.0, 1.0);
    const double theta = std::acos(u) / 3.0;
    double e[3];
    for (int k = 0; k < 3; ++k) e[k] = 2.0 * r * std::cos(theta - 2.0 * pi * k / 3.0);

    // Newton polish; exact roots (e.g. small integers) become fixed points.
    for (double& ek : e) {
        double best = ek, best_f = std::abs(((4.0 * ek) * ek - g2) * ek - g3);
        for (int it = 0; it < 8 && best_f != 0.0; ++it) {
            const double fv = ((4.0 * ek) * ek - g2) * ek - g3;
            const double fp = 12.0 * ek * ek - g2;
            if (fv == 0.0 || fp == 0.0) break;
            ek -= fv / fp;
            const double f_new = std::abs(((4.0 * ek) * ek - g2) * ek - g3);
            if (f_new < best_f) {
                best = ek;
                best_f = f_new;
            }
        }
        ek = best;
    }
    std::sort(e, e + 3, std::greater<double>());

    EllipticData ed;
    ed.g2 = g2;
    ed.g3 = g3;
    ed.e1 = e[0];
    ed.e2 = e[1];
    ed.e3 = e[2];
    ed.delta = delta;
    const double s = std::sqrt(ed.e1 - ed.e3);
    const double m = (ed.e2 - ed.e3) / (ed.e1 - ed.e3);
    ed.omega1 = detail::elliptic_K(m) / s;
    ed.omega3_im = detail::elliptic_K(1.0 - m) / s;
    return ed;
}

// g(x) = p(x + omega3) = e3 + (e2 - e3) sn^2(x sqrt(e1-e3) | m).
// Even in x, period 2*omega1, range [e3, e2].
inline double wp_shifted(double x, const EllipticData& ed) {
    require_finite(x, "wp_shifted argument");
    const double s = std::sqrt(ed.e1 - ed.e3);
    const double m = (ed.e2 - ed.e3) / (ed.e1 - ed.e3);
    const double K = ed.omega1 * s;  // K(m), from the stored half-period
    double v = std::fmod(x * s, 2.0 * K);
    if (v < 0.0) v += 2.0 * K;
    if (v > K) v = 2.0 * K - v;  // sn^2 is symmetric about K
    const double sn = detail::jacobi_sn(v, m);
    return ed.e3 + (ed.e2 - ed.e3) * sn * sn;
}

// d/dx of wp_shifted: magnitude from the defining ODE, sign from the
// phase within the real period (rising half from e3 to e2, then back).
inline double wp_shifted_deriv(double x, const EllipticData& ed) {
    const double g = wp_shifted(x, ed);
    const double rhs = ((4.0 * g) * g - ed.g2) * g - ed.g3;
    const double mag = std::sqrt(std::max(0.0, rhs));
    double r = std::fmod(x, 2.0 * ed.omega1);
    if (r < 0.0) r += 2.0 * ed.omega1;
    return r <= ed.omega1 ? mag : -mag;
}

}  // namespace wkb
