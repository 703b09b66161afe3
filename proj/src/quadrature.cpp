#include "orderflow/quadrature.hpp"

#include <cmath>
#include <cstdlib>

namespace orderflow::quad {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15.0 * tol) return left + right + err / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  if (r == 0.0) return 0.0;
  auto term = [&](double t) {
    const double u = M_PI_2 * std::sinh(t);
    const double x = c + r * std::tanh(u);
    if (!(x > a && x < b)) return 0.0;
    const double ch = std::cosh(u);
    const double w = r * M_PI_2 * std::cosh(t) / (ch * ch);
    if (!std::isfinite(w) || w <= 0.0) return 0.0;
    const double fv = f(x);
    return std::isfinite(fv) ? fv * w : 0.0;
  };
  const double tmax = 4.5;
  double h = 1.0;
  double sum = term(0.0);
  for (double t = h; t <= tmax; t += h) sum += term(t) + term(-t);
  double result = h * sum;
  for (int level = 1; level <= 11; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= tmax; t += 2.0 * h) add += term(t) + term(-t);
    sum += add;
    const double cur = h * sum;
    if (level >= 3 && std::abs(cur - result) <= tol * (1.0 + std::abs(cur))) return cur;
    result = cur;
  }
  return result;
}

double exp_sinh_0inf(const std::function<double(double)>& f, double tol) {
  auto term = [&](double t) {
    const double x = std::exp(M_PI_2 * std::sinh(t));
    if (!std::isfinite(x) || x <= 0.0) return 0.0;
    const double w = M_PI_2 * std::cosh(t) * x;
    if (!std::isfinite(w)) return 0.0;
    const double fv = f(x);
    return std::isfinite(fv) ? fv * w : 0.0;
  };
  const double tmax = 6.2;
  double h = 1.0;
  double sum = term(0.0);
  for (double t = h; t <= tmax; t += h) sum += term(t) + term(-t);
  double result = h * sum;
  for (int level = 1; level <= 11; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= tmax; t += 2.0 * h) add += term(t) + term(-t);
    sum += add;
    const double cur = h * sum;
    if (level >= 3 && std::abs(cur - result) <= tol * (1.0 + std::abs(cur))) return cur;
    result = cur;
  }
  return result;
}

}  // namespace orderflow::quad
