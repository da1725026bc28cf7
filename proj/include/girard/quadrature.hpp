#pragma once

#include <functional>

namespace girard::quadrature {

/// Adaptive quadrature of f over (a, b). Endpoint behavior is handled by a
/// double-exponential substitution, so integrable boundary singularities
/// (negative-power densities, log endpoints) converge without special
/// casing. Throws std::invalid_argument on a degenerate interval and
/// std::runtime_error when the error estimate misses `tolerance` relative
/// to the integral's L1 mass.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tolerance = 1e-9);

}  // namespace girard::quadrature
