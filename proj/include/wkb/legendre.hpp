#pragma once

// Legendre functions of the first and second kind, integer degree,
// by Bonnet's recursion.

#include <cmath>

#include "wkb/common.hpp"

namespace wkb {

namespace detail {

// (k+1) C_{k+1} = (2k+1) z C_k - k C_{k-1}, shared by P and Q.
inline double bonnet(double c0, double c1, int n, double z) {
    if (n == 0) return c0;
    double prev = c0, cur = c1;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * z * cur - double(k) * prev) / double(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace detail

inline double legendre_p(int n, double z) {
    if (n < 0) throw bad_input("legendre_p: degree must be >= 0");
    require_finite(z, "legendre_p argument");
    return detail::bonnet(1.0, z, n, z);
}

inline double legendre_q(int n, double z) {
    if (n < 0) throw bad_input("legendre_q: degree must be >= 0");
    require_finite(z, "legendre_q argument");
    if (!(std::abs(z) < 1.0))
        throw bad_input("legendre_q: |z| must be < 1 (logarithmic branch points at +-1)");
    const double q0 = std::atanh(z);
    return detail::bonnet(q0, z * q0 - 1.0, n, z);
}

// Derivatives through (1-z^2) C_n' = n (C_{n-1} - z C_n).
inline double legendre_p_prime(int n, double z) {
    if (n < 0) throw bad_input("legendre_p_prime: degree must be >= 0");
    require_finite(z, "legendre_p_prime argument");
    if (n == 0) return 0.0;
    if (z == 1.0 || z == -1.0) {
        const double v = 0.5 * double(n) * double(n + 1);
        return (z > 0.0 || n % 2 == 1) ? v : -v;
    }
    return double(n) * (legendre_p(n - 1, z) - z * legendre_p(n, z)) / (1.0 - z * z);
}

inline double legendre_q_prime(int n, double z) {
    if (n < 0) throw bad_input("legendre_q_prime: degree must be >= 0");
    require_finite(z, "legendre_q_prime argument");
    if (!(std::abs(z) < 1.0))
        throw bad_input("legendre_q_prime: |z| must be < 1 (logarithmic branch points at +-1)");
    if (n == 0) return 1.0 / (1.0 - z * z);
    return double(n) * (legendre_q(n - 1, z) - z * legendre_q(n, z)) / (1.0 - z * z);
}

}  // namespace wkb
