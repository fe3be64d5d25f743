#pragma once

// Imaginary error function.

#include <cmath>

#include "wkb/common.hpp"

namespace wkb {

// erfi(x) = (2/sqrt(pi)) * integral_0^x exp(s^2) ds.
//
// Maclaurin series sum_k x^{2k+1} / (k! (2k+1)): every term is positive
// for x > 0, so there is no cancellation at any argument and the error
// is bounded by the first dropped term.  Oddness covers x < 0.
inline double erfi(double x) {
    require_finite(x, "erfi argument");
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.0;
    const double x2 = ax * ax;
    // Result ~ e^{x^2}/(sqrt(pi) x); the largest series term overflows
    // just before the sum does.
    if (x2 > 709.0) throw overflow_error("erfi: result exceeds double range (|x| > ~26.6)");
    double term = ax;  // x^{2k+1} / k!
    double sum = ax;
    for (int k = 1; k < 4000; ++k) {
        term *= x2 / double(k);
        const double contrib = term / double(2 * k + 1);
        sum += contrib;
        if (contrib < sum * 1e-17) break;
    }
    const double r = sum * (2.0 / std::sqrt(pi));
    return x < 0.0 ? -r : r;
}

}  // namespace wkb
