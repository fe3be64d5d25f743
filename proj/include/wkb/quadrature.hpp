#pragma once

// Globally adaptive Gauss-Kronrod 7-15 quadrature.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "wkb/common.hpp"

namespace wkb {
namespace detail {

// Kronrod nodes on (0,1]; odd indices are the embedded Gauss-7 nodes.
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F>
inline void gk15(F& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk_x[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        resk += gk_wk[j] * (f1 + f2);
        if (j % 2 == 1) resg += gk_wg[j / 2] * (f1 + f2);
    }
    result = resk * h;
    err = std::abs((resk - resg) * h);
    if (!std::isfinite(result)) {
        result = 0.0;
        err = std::numeric_limits<double>::infinity();
    }
}

}  // namespace detail

// Adaptive quadrature of f over [lo, hi] with mixed absolute/relative
// target: total error estimate <= max(tol, tol*|result|).  Splits the
// worst segment until converged; a bounded refinement budget turns
// genuinely singular or non-smooth integrands into an error instead of
// an endless loop.  lo > hi integrates with the usual sign flip.
template <class F>
inline double integrate(F&& f, double lo, double hi, double tol = 1e-11) {
    require_finite(lo, "integration bound");
    require_finite(hi, "integration bound");
    if (!(tol > 0.0)) throw bad_input("integrate: tol must be positive");
    if (lo == hi) return 0.0;
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    struct Seg {
        double a, b, val, err;
    };
    std::vector<Seg> segs;
    auto push = [&](double a, double b) {
        Seg s{a, b, 0.0, 0.0};
        detail::gk15(f, a, b, s.val, s.err);
        segs.push_back(s);
    };
    push(lo, hi);

    const int budget = 4000;
    for (int splits = 0;; ++splits) {
        double total = 0.0, total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            total_err += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        if (total_err <= std::max(tol, tol * std::abs(total))) return sign * total;
        if (splits >= budget)
            throw convergence_error("integrate: singular or non-smooth integrand");
        const Seg w = segs[worst];
        const double mid = 0.5 * (w.a + w.b);
        if (!(w.a < mid && mid < w.b))
            throw convergence_error("integrate: singular or non-smooth integrand");
        segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(worst));
        push(w.a, mid);
        push(mid, w.b);
    }
}

}  // namespace wkb
