#pragma once

// Monic Hermite polynomials by coefficient recurrence.

#include "wkb/polynomial.hpp"

namespace wkb {

// P_{k+1}(s) = s P_k(s) - (k/2) P_{k-1}(s), P_0 = 1, P_1 = s.
// Equals 2^{-m} H_m (physicists' normalization) and solves
// P'' - 2 s P' + 2 m P = 0.  All coefficients are dyadic rationals, so
// for moderate m the recurrence is exact in double arithmetic.
inline Polynomial hermite_poly(int m) {
    if (m < 0) throw bad_input("hermite_poly: m must be >= 0");
    Polynomial prev{{1.0}};
    if (m == 0) return prev;
    Polynomial cur{{0.0, 1.0}};
    for (int k = 1; k < m; ++k) {
        std::vector<double> next(cur.coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.coeffs.size(); ++i) next[i + 1] = cur.coeffs[i];
        const double c = 0.5 * double(k);
        for (std::size_t i = 0; i < prev.coeffs.size(); ++i) next[i] -= c * prev.coeffs[i];
        prev = std::move(cur);
        cur = Polynomial{std::move(next)};
    }
    return cur;
}

}  // namespace wkb
