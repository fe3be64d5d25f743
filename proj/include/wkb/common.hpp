#pragma once

// Error taxonomy and small shared helpers for the wkb library.

#include <cmath>
#include <stdexcept>
#include <string>

namespace wkb {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Base of everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arguments that are malformed regardless of mathematics: non-finite
// numbers, parameters outside a family's definition, impossible paths.
// The CLI maps these to exit code 4.
struct bad_input : error {
    using error::error;
};

// Well-formed input on which the requested operation is undefined:
// focal points, coefficient singularities along the path, energies with
// no Liouvillian closed form.  The CLI maps these to exit code 3.
struct domain_error : error {
    using error::error;
};

struct focal_point_error : domain_error {
    using domain_error::domain_error;
};
struct singular_coefficient_error : domain_error {
    using domain_error::domain_error;
};
struct not_integrable_error : domain_error {
    using domain_error::domain_error;
};
struct convergence_error : domain_error {
    using domain_error::domain_error;
};
struct overflow_error : domain_error {
    using domain_error::domain_error;
};

inline double require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw bad_input(std::string(name) + " must be finite");
    return x;
}

}  // namespace wkb
