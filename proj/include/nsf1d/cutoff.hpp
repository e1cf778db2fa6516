#pragma once

namespace nsf1d::diag {

// C1 cutoff profile: 1 on (-inf,-1], the cubic 1/4 x^3 - 3/4 x + 1/2 on [-1,1],
// 0 on [1,inf). Monotone non-increasing, eta(x) + eta(-x) == 1.
inline double eta(double x) noexcept {
  if (x <= -1.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return 0.25 * x * x * x - 0.75 * x + 0.5;
}

// Derivative of eta: 3/4 x^2 - 3/4 on [-1,1], zero outside.
// Even in x, minimum -3/4 at the origin.
inline double eta_prime(double x) noexcept {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return 0.75 * x * x - 0.75;
}

}  // namespace nsf1d::diag
