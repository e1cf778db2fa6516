#include "nsf1d/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsf1d {
namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double rel_tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = (left + right - whole) / 15.0;
  const double scale = std::max(std::abs(left + right), 1e-300);
  if (depth <= 0 || std::abs(err) <= rel_tol * scale) {
    return left + right + err;
  }
  return adapt(f, a, m, fa, flm, fm, left, rel_tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, rel_tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("adaptive_simpson: non-finite bounds");
  }
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return sign * adapt(f, a, b, fa, fm, fb, whole, rel_tol, max_depth);
}

double adaptive_simpson_to_infinity(const std::function<double(double)>& f, double a,
                                    double rel_tol) {
  if (!(a > 0)) {
    throw std::invalid_argument("adaptive_simpson_to_infinity: requires a > 0");
  }
  // u = 1/y maps [a, inf) to (0, 1/a]; dy = du/u^2.
  const auto g = [&f](double u) {
    if (u <= 0.0) return 0.0;
    const double y = 1.0 / u;
    return f(y) * y * y;
  };
  return adaptive_simpson(g, 0.0, 1.0 / a, rel_tol);
}

}  // namespace nsf1d
