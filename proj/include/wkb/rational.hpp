#pragma once

// Exact rationals for the integrability classifier, plus snapping of
// floating-point inputs to nearby small rationals.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "wkb/common.hpp"

namespace wkb {

struct Rational {
    long long num = 0;
    long long den = 1;  // always > 0, gcd(|num|, den) == 1

    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) {
        if (den == 0) throw bad_input("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_integer() const { return den == 1; }
    double value() const { return double(num) / double(den); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
};

inline std::string to_string(const Rational& r) {
    return r.is_integer() ? std::to_string(r.num)
                          : std::to_string(r.num) + "/" + std::to_string(r.den);
}

// Strict "p" or "p/q" integer-literal form; nullopt for anything else
// (decimals go through snap_rational instead).
inline std::optional<Rational> parse_rational_literal(std::string_view s) {
    const auto parse_ll = [](std::string_view t, long long& out) {
        if (t.empty()) return false;
        const char* first = t.data();
        const char* last = t.data() + t.size();
        auto [p, ec] = std::from_chars(first, last, out);
        return ec == std::errc() && p == last;
    };
    const auto slash = s.find('/');
    long long p = 0, q = 1;
    if (slash == std::string_view::npos) {
        if (!parse_ll(s, p)) return std::nullopt;
        return Rational(p);
    }
    if (!parse_ll(s.substr(0, slash), p) || !parse_ll(s.substr(slash + 1), q) || q == 0)
        return std::nullopt;
    return Rational(p, q);
}

// Nearest continued-fraction convergent p/q with q <= max_den and
// |x - p/q| <= tol, if one exists.
inline std::optional<Rational> snap_rational(double x, double tol = 1e-12,
                                             long long max_den = 1000) {
    if (!std::isfinite(x) || std::abs(x) > 9.0e15) return std::nullopt;
    long long p0 = 1, q0 = 0;
    long long p1 = (long long)std::llround(std::floor(x)), q1 = 1;
    double frac = x - std::floor(x);
    for (int it = 0; it < 64; ++it) {
        if (std::abs(x - double(p1) / double(q1)) <= tol) return Rational(p1, q1);
        if (frac <= 0.0) break;
        const double inv = 1.0 / frac;
        if (inv > 4.0e15) break;
        const long long a = (long long)std::floor(inv);
        frac = inv - std::floor(inv);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    if (q1 <= max_den && std::abs(x - double(p1) / double(q1)) <= tol) return Rational(p1, q1);
    return std::nullopt;
}

// A reduced parameter as the classifier sees it: an exact rational, a
// real with no nearby small rational, or a complex-exponent marker.
class GaloisNumber {
  public:
    enum class Kind { Exact, Irrational, Complex };

    static GaloisNumber exact(const Rational& r) {
        GaloisNumber g;
        g.kind_ = Kind::Exact;
        g.rat_ = r;
        g.value_ = r.value();
        return g;
    }
    static GaloisNumber irrational(double v) {
        GaloisNumber g;
        g.kind_ = Kind::Irrational;
        g.value_ = v;
        return g;
    }
    static GaloisNumber complex_marker() {
        GaloisNumber g;
        g.kind_ = Kind::Complex;
        g.value_ = std::numeric_limits<double>::quiet_NaN();
        return g;
    }
    static GaloisNumber from_double(double v, double tol = 1e-12, long long max_den = 1000) {
        if (!std::isfinite(v)) throw bad_input("GaloisNumber: value must be finite");
        if (auto r = snap_rational(v, tol, max_den)) return exact(*r);
        return irrational(v);
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_complex() const { return kind_ == Kind::Complex; }
    bool is_integer() const { return kind_ == Kind::Exact && rat_.is_integer(); }
    const Rational& rat() const {
        if (kind_ != Kind::Exact) throw bad_input("GaloisNumber: no exact rational value");
        return rat_;
    }
    double value() const { return value_; }

    GaloisNumber negated() const {
        switch (kind_) {
            case Kind::Exact: return exact(-rat_);
            case Kind::Irrational: return irrational(-value_);
            default: return *this;
        }
    }
    // The exponent-symmetry partner n -> -n - 1.
    GaloisNumber reflected() const {
        switch (kind_) {
            case Kind::Exact: return exact(Rational(-rat_.num - rat_.den, rat_.den));
            case Kind::Irrational: return irrational(-value_ - 1.0);
            default: return *this;
        }
    }

  private:
    Kind kind_ = Kind::Irrational;
    Rational rat_;
    double value_ = 0.0;
};

}  // namespace wkb
