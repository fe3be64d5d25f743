#pragma once

// Adaptive high-order integration of the 2x2 fundamental matrix of the
// normal variational equation.  This is the ground truth the closed
// forms are validated against: it evaluates the coefficient directly
// and never consults the basis formulas.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "wkb/common.hpp"
#include "wkb/family.hpp"

namespace wkb {

struct FundamentalMatrix {
    double t = 0.0;
    double phi11 = 1.0, phi12 = 0.0, phi21 = 0.0, phi22 = 1.0;
    double det() const { return phi11 * phi22 - phi12 * phi21; }
};

// |det - 1|: the system is trace-free, so the exact flow preserves 1.
inline double wronskian_drift(const FundamentalMatrix& fm) { return std::abs(fm.det() - 1.0); }

// Called with the state after every accepted step (and once with the
// initial condition).
using StepObserver = std::function<void(const FundamentalMatrix&)>;

namespace detail {

// Dormand-Prince 5(4) pair, FSAL form.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
inline constexpr double dp_b5[7] = {35.0 / 384,      0.0,       500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0.0};
// b5 - b4: weights of the embedded error estimate
inline constexpr double dp_e[7] = {71.0 / 57600,        0.0,         -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

inline std::string fmt_time(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", t);
    return buf;
}

}  // namespace detail

// Fundamental solution of xi'' + c(x0 + v t) xi = 0 with the identity
// initial condition at t_a, propagated to t_b (either direction).
inline FundamentalMatrix fundamental_between(const FamilySpec& f, double E, const PathSpec& path,
                                             double t_a, double t_b, double tol = 1e-10,
                                             const StepObserver& observe = {}) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw bad_input("oracle: tol must be positive");
    if (std::abs(E - path.energy()) > 1e-9 * std::max(1.0, std::abs(E)))
        throw bad_input("oracle: E disagrees with the path energy");
    require_finite(t_a, "t_a");
    require_finite(t_b, "t_b");
    validate_path(f, path);

    const double v = path.velocity();
    const double x0 = path.x0;
    auto deriv = [&](double t, const double y[4], double k[4]) {
        const double c = coefficient_at(f, x0 + v * t);
        k[0] = y[1];
        k[1] = -c * y[0];
        k[2] = y[3];
        k[3] = -c * y[2];
    };

    FundamentalMatrix m;
    m.t = t_a;
    if (observe) observe(m);
    if (t_a == t_b) return m;

    double t = t_a;
    double y[4] = {1.0, 0.0, 0.0, 1.0};
    const double s = t_b > t_a ? 1.0 : -1.0;
    double h = s * std::min(std::abs(t_b - t_a), 0.1);
    double k[7][4];
    deriv(t, y, k[0]);

    constexpr double beta = 0.04;
    constexpr double alpha = 0.2 - 0.75 * beta;
    constexpr double safety = 0.9;
    double err_prev = 1e-4;
    bool rejected = false;

    for (long iter = 0;; ++iter) {
        if (iter > 2000000) throw convergence_error("oracle: step budget exhausted");
        bool last = false;
        if ((t + h - t_b) * s >= 0.0) {
            h = t_b - t;
            last = true;
        }
        if (!last && std::abs(h) <= 1e-14 * std::max(1.0, std::abs(t)))
            throw singular_coefficient_error(
                "oracle: step size underflow near t = " + detail::fmt_time(t) +
                " (coefficient singularity on the integration range)");

        double ytmp[4];
        for (int i = 1; i < 7; ++i) {
            for (int c = 0; c < 4; ++c) {
                double acc = 0.0;
                for (int j = 0; j < i; ++j) acc += detail::dp_a[i][j] * k[j][c];
                ytmp[c] = y[c] + h * acc;
            }
            deriv(t + detail::dp_c[i] * h, ytmp, k[i]);
        }
        double y5[4], e[4];
        for (int c = 0; c < 4; ++c) {
            double acc5 = 0.0, acce = 0.0;
            for (int j = 0; j < 7; ++j) {
                acc5 += detail::dp_b5[j] * k[j][c];
                acce += detail::dp_e[j] * k[j][c];
            }
            y5[c] = y[c] + h * acc5;
            e[c] = h * acce;
        }
        double err = 0.0;
        for (int c = 0; c < 4; ++c) {
            const double sc = tol * (1.0 + std::max(std::abs(y[c]), std::abs(y5[c])));
            err += (e[c] / sc) * (e[c] / sc);
        }
        err = std::sqrt(err / 4.0);

        if (!std::isfinite(err)) {
            h *= 0.1;
            rejected = true;
            continue;
        }
        if (err <= 1.0) {
            for (int c = 0; c < 4; ++c) y[c] = y5[c];
            for (int c = 0; c < 4; ++c) k[0][c] = k[6][c];  // FSAL
            t = last ? t_b : t + h;
            m.t = t;
            m.phi11 = y[0];
            m.phi21 = y[1];
            m.phi12 = y[2];
            m.phi22 = y[3];
            if (observe) observe(m);
            if (last) return m;
            double fac = safety * std::pow(std::max(err, 1e-16), -alpha) *
                         std::pow(err_prev, beta);
            if (rejected) fac = std::min(fac, 1.0);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(err, 1e-4);
            rejected = false;
        } else {
            h *= std::clamp(safety * std::pow(err, -alpha), 0.1, 0.9);
            rejected = true;
        }
    }
}

inline FundamentalMatrix integrate_fundamental(const FamilySpec& f, double E,
                                               const PathSpec& path, double t_end,
                                               double tol = 1e-10,
                                               const StepObserver& observe = {}) {
    return fundamental_between(f, E, path, 0.0, t_end, tol, observe);
}

inline double phi12_numeric(const FamilySpec& f, double E, const PathSpec& path, double t1,
                            double tol = 1e-10) {
    return integrate_fundamental(f, E, path, t1, tol).phi12;
}

}  // namespace wkb
