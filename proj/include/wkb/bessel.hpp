#pragma once

// Bessel functions of half-integer order, both kinds, for x > 0.

#include <cmath>
#include <vector>

#include "wkb/common.hpp"

namespace wkb {

enum class BesselKind { J, Y };

namespace detail {

inline double sqrt_2_over_pix(double x) { return std::sqrt(2.0 / (pi * x)); }

// Three-term recurrence C_{nu+1} = (2 nu / x) C_nu - C_{nu-1} started
// from the trigonometric orders -1/2 and 1/2.  Always stable for Y
// (the dominant solution); stable for J only when x is well above the
// target order.
inline double recur_up(double c_minus, double c_plus, int n, double x) {
    for (int k = 0; k < n; ++k) {
        const double nu = double(k) + 0.5;
        const double next = (2.0 * nu / x) * c_plus - c_minus;
        c_minus = c_plus;
        c_plus = next;
    }
    return c_plus;
}

// Miller's algorithm: run the recurrence downward from a start order
// well above both n and x, where J is the minimal solution, then
// normalize against the closed-form order 1/2 or -1/2 seed (whichever
// trig seed is away from a zero).
inline double j_miller(int n, double x) {
    const int m = n + 30 + int(std::ceil(0.5 * x));
    std::vector<double> f(std::size_t(m) + 2, 0.0);
    f[std::size_t(m) + 1] = 0.0;
    f[std::size_t(m)] = 1e-30;
    for (int k = m; k >= 1; --k) {
        const double nu = double(k) + 0.5;
        f[std::size_t(k) - 1] = (2.0 * nu / x) * f[std::size_t(k)] - f[std::size_t(k) + 1];
        if (std::abs(f[std::size_t(k) - 1]) > 1e250) {
            for (int j = k - 1; j <= m + 1; ++j) f[std::size_t(j)] *= 1e-250;
        }
    }
    const double f_minus = (1.0 / x) * f[0] - f[1];  // order -1/2
    const double s = std::sin(x), c = std::cos(x);
    const double scale = std::abs(s) >= std::abs(c)
                             ? sqrt_2_over_pix(x) * s / f[0]
                             : sqrt_2_over_pix(x) * c / f_minus;
    return scale * f[std::size_t(n)];
}

}  // namespace detail

// J_{n+1/2}(x) or Y_{n+1/2}(x); n may be negative (handled through the
// half-odd reflection identities).
inline double bessel_half(BesselKind kind, int n, double x) {
    require_finite(x, "bessel_half argument");
    if (!(x > 0.0)) throw bad_input("bessel_half: x must be positive (branch point at 0)");
    if (n < 0) {
        // J_{-(m+1/2)} = (-1)^{m+1} Y_{m+1/2},  Y_{-(m+1/2)} = (-1)^m J_{m+1/2}
        const int m = -n - 1;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        if (kind == BesselKind::J) return -sign * bessel_half(BesselKind::Y, m, x);
        return sign * bessel_half(BesselKind::J, m, x);
    }
    const double pref = detail::sqrt_2_over_pix(x);
    if (kind == BesselKind::Y)
        return detail::recur_up(pref * std::sin(x), -pref * std::cos(x), n, x);
    if (x > 1.5 * n + 1.0)
        return detail::recur_up(pref * std::cos(x), pref * std::sin(x), n, x);
    return detail::j_miller(n, x);
}

}  // namespace wkb
