#pragma once

// Semiclassical propagator assembly: classical action, Van Vleck
// determinant, the complex prefactor, and focal-point detection along
// the path.

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "wkb/common.hpp"
#include "wkb/family.hpp"
#include "wkb/oracle.hpp"

namespace wkb {

enum class Source { ClosedForm, Oracle };

inline const char* to_string(Source s) {
    return s == Source::ClosedForm ? "closed-form" : "oracle";
}

struct PropagatorValue {
    double re = 0.0, im = 0.0;
    double modulus = 0.0, phase = 0.0;  // phase in (-pi, pi]
    double action = 0.0, det_j = 0.0;
    double hbar = 1.0;
    Source source = Source::ClosedForm;
};

inline double action(const PathSpec& p) {
    const double d = p.x1 - p.x0;
    return d * d / (2.0 * p.t1);
}

inline double van_vleck_det(double t1, double phi12) { return t1 * phi12; }

namespace detail {
inline double principal_angle(double a) {
    double r = std::remainder(a, 2.0 * pi);  // lands in [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
}
}  // namespace detail

// 1/(2 pi i hbar) (det J)^{-1/2} e^{iS/hbar} with the positive real
// square root.  A non-positive determinant means the path has crossed a
// focal point; the bare prefactor is meaningless there.
inline PropagatorValue kwkb(const PathSpec& path, double phi12, double hbar = 1.0,
                            Source source = Source::ClosedForm) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw bad_input("kwkb: hbar must be positive");
    require_finite(phi12, "phi12");
    PropagatorValue out;
    out.action = action(path);
    out.det_j = van_vleck_det(path.t1, phi12);
    out.hbar = hbar;
    out.source = source;
    if (!(out.det_j > 0.0)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", out.det_j);
        throw focal_point_error(std::string("FocalPointCrossed: det J = t1 phi12 = ") + buf +
                                " <= 0; no Maslov continuation is attempted");
    }
    out.modulus = 1.0 / (2.0 * pi * hbar * std::sqrt(out.det_j));
    out.phase = detail::principal_angle(out.action / hbar - pi / 2.0);
    out.re = out.modulus * std::cos(out.phase);
    out.im = out.modulus * std::sin(out.phase);
    return out;
}

// A refined zero of phi12 along the path, with the bracket that
// certifies it: phi12 changes sign across [bracket_lo, bracket_hi].
struct FocalPoint {
    double t = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
};

// Zeros of phi12 on (0, t_max], located from the sign pattern of the
// integrator's accepted steps and refined by bisection.  A zero sitting
// exactly on t_max may fall on either side of the boundary at working
// precision and is reported only when the sign change completes.
inline std::vector<FocalPoint> focal_points(const FamilySpec& f, const EnergyLevel& level,
                                            const PathSpec& path, double t_max,
                                            double tol = 1e-10) {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw bad_input("focal_points: t_max must be positive");
    std::vector<std::pair<double, double>> samples;  // (t, phi12) at accepted steps
    integrate_fundamental(f, level.E, path, t_max, tol,
                          [&](const FundamentalMatrix& m) { samples.emplace_back(m.t, m.phi12); });

    auto g = [&](double t) { return phi12_numeric(f, level.E, path, t, tol); };
    std::vector<FocalPoint> out;
    for (std::size_t i = 2; i < samples.size(); ++i) {
        const auto& [ta, fa] = samples[i - 1];
        const auto& [tb, fb] = samples[i];
        if (!(fa * fb < 0.0)) continue;  // the t = 0 zero is trivial, not focal
        double lo = ta, hi = tb, flo = fa;
        for (int it = 0; it < 80 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = g(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        out.push_back(FocalPoint{0.5 * (lo + hi), ta, tb});
    }
    return out;
}

}  // namespace wkb
