#pragma once

#include <cmath>
#include <functional>

namespace testutil {

// Composite Simpson with a fixed even panel count; deliberately independent
// of the library quadrature.
inline double composite_simpson(const std::function<double(double)>& f, double a, double b,
                                int panels = 20000) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    acc += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return acc * h / 3.0;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testutil
