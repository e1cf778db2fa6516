#pragma once

#include <functional>

namespace nsf1d {

// Adaptive Simpson quadrature with a relative error target.
// Handles a > b by sign flip. Throws std::invalid_argument on non-finite bounds.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, int max_depth = 48);

// Integral of f over [a, +inf), computed via the substitution y = 1/u.
// The integrand must decay at least like y^-2 for the substitution to be proper.
double adaptive_simpson_to_infinity(const std::function<double(double)>& f, double a,
                                    double rel_tol = 1e-10);

}  // namespace nsf1d
