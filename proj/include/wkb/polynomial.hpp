#pragma once

// Dense univariate polynomials with real coefficients, ascending degree.

#include <cstddef>
#include <utility>
#include <vector>

#include "wkb/common.hpp"

namespace wkb {

struct Polynomial {
    std::vector<double> coeffs{0.0};

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    double operator()(double s) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs.size() <= 1) return Polynomial{{0.0}};
        std::vector<double> d(coeffs.size() - 1);
        for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = double(k) * coeffs[k];
        return Polynomial{std::move(d)};
    }

    double leading() const { return coeffs.back(); }
};

// Real roots in [lo, hi] by sign-scan plus bisection.  Adequate for the
// low-degree polynomials with simple real roots used here; roots of even
// multiplicity would be missed.
inline std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi) {
    require_finite(lo, "root search bound");
    require_finite(hi, "root search bound");
    if (hi < lo) std::swap(lo, hi);
    std::vector<double> roots;
    if (lo == hi) {
        if (p(lo) == 0.0) roots.push_back(lo);
        return roots;
    }
    const int n = 400 * std::max(1, p.degree());
    double xa = lo, fa = p(xa);
    for (int i = 1; i <= n; ++i) {
        const double xb = lo + (hi - lo) * double(i) / double(n);
        const double fb = p(xb);
        if (fa == 0.0) {
            roots.push_back(xa);
        } else if (fa * fb < 0.0) {
            double a = xa, b = xb, va = fa;
            for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
                const double m = 0.5 * (a + b), vm = p(m);
                if (vm == 0.0) {
                    a = b = m;
                    break;
                }
                if (va * vm < 0.0)
                    b = m;
                else {
                    a = m;
                    va = vm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    if (fa == 0.0) roots.push_back(xa);
    return roots;
}

}  // namespace wkb
