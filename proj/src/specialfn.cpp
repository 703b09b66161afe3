#include "orderflow/specialfn.hpp"

#include <cmath>
#include <limits>

#include "orderflow/quadrature.hpp"

namespace orderflow::ml {

namespace {

void check_params(double alpha, double beta) {
  if (!(alpha > 0.0) || alpha > 1.0 || !std::isfinite(alpha))
    throw std::domain_error("mittag_leffler: alpha must be in (0,1]");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error("mittag_leffler: beta must be positive");
}

// Largest log10 |term| of the power series; sizes the cancellation loss.
double series_peak_log10(double alpha, double beta, double ax) {
  if (ax <= 1.0) return 0.0;
  const double lx = std::log(ax);
  double peak = -std::lgamma(beta);
  for (int k = 1; k < 100000; ++k) {
    const double lt = k * lx - std::lgamma(alpha * k + beta);
    if (lt > peak) peak = lt;
    if (alpha * k + beta > 3.0 && lt < peak - 40.0) break;
  }
  return peak / std::log(10.0);
}

double series(double alpha, double beta, double x) {
  double sum = 0.0;
  double comp = 0.0;  // Kahan carry
  for (int k = 0; k < 100000; ++k) {
    const double la = k * std::log(std::abs(x)) - std::lgamma(alpha * k + beta);
    double term = (k == 0) ? 1.0 / std::tgamma(beta) : std::exp(la);
    if (k > 0 && x < 0.0 && (k & 1)) term = -term;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (k > 8 && std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    if (!std::isfinite(sum))
      throw std::overflow_error("mittag_leffler: series exceeds double range");
  }
  return sum;
}

// 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi; zero at the poles.
double inv_gamma(double z) {
  if (z > 0.5) return 1.0 / std::tgamma(z);
  const double s = std::sin(M_PI * z);
  return s * std::exp(std::lgamma(1.0 - z)) / M_PI;
}

struct AsymptoticResult {
  double value;
  double rel_err;
};

// E_{alpha,beta}(-y) ~ sum_{k>=1} (-1)^{k+1} y^{-k} / Gamma(beta - alpha k),
// truncated at the smallest term.  Terms at Gamma poles vanish and carry no
// error information, so they are skipped outright.
AsymptoticResult asymptotic_neg(double alpha, double beta, double y) {
  double sum = 0.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  double err = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 60; ++k) {
    const double term =
        ((k & 1) ? 1.0 : -1.0) * std::pow(y, -double(k)) * inv_gamma(beta - alpha * k);
    const double amag = std::abs(term);
    if (amag == 0.0) continue;
    if (amag >= prev_mag && k > 2) {  // divergence onset: stop before adding
      err = amag;
      break;
    }
    sum += term;
    prev_mag = amag;
    err = amag;
  }
  return {sum, err / (std::abs(sum) + 1e-300)};
}

// Branch-cut integral (0 < alpha < 1, beta < 1 + alpha/2, x < 0):
//   E_{alpha,beta}(x) = int_0^inf  (1/pi) u^{alpha-beta} e^{-u}
//       [u^alpha sin(pi(1-beta)) + y sin(pi(1-beta+alpha))]
//       / (u^{2 alpha} + 2 u^alpha y cos(pi alpha) + y^2)  du,   y = -x.
// Split at u = 1; on [0,1] the substitution u = w^p with p = 1/(1+alpha-beta)
// absorbs the endpoint singularity exactly.
double integral_neg(double alpha, double beta, double y) {
  const double s1 = std::sin(M_PI * (1.0 - beta));
  const double s2 = std::sin(M_PI * (1.0 - beta + alpha));
  const double cpa = std::cos(M_PI * alpha);
  auto core = [&](double u) {  // integrand without the u^{alpha-beta} factor
    const double ua = std::pow(u, alpha);
    const double den = ua * ua + 2.0 * ua * y * cpa + y * y;
    return std::exp(-u) * (ua * s1 + y * s2) / (M_PI * den);
  };
  const double p = 1.0 / (1.0 + alpha - beta);
  const double lower = p * quad::adaptive_simpson(
                               [&](double w) { return core(std::pow(w, p)); }, 0.0, 1.0, 1e-14);
  const double upper = quad::adaptive_simpson(
      [&](double u) { return std::pow(u, alpha - beta) * core(u); }, 1.0, 45.0, 1e-14);
  return lower + upper;
}

double eval_negative(double alpha, double beta, double x);

// beta-reduction: x E_{a,b}(x) = E_{a,b-a}(x) - 1/Gamma(b-a).
double reduce_beta(double alpha, double beta, double x) {
  return (eval_negative(alpha, beta - alpha, x) - inv_gamma(beta - alpha)) / x;
}

double eval_negative(double alpha, double beta, double x) {
  const double y = -x;
  const double peak = series_peak_log10(alpha, beta, y);
  if (peak < 4.0) return series(alpha, beta, x);
  const AsymptoticResult asy = asymptotic_neg(alpha, beta, y);
  if (asy.rel_err < 1e-13) return asy.value;
  if (alpha >= 1.0) {
    // no branch-cut integral at alpha = 1; the series peak governs accuracy
    return series(alpha, beta, x);
  }
  // keep the substitution exponent of the integral bounded by 2/alpha
  if (beta >= 1.0 + 0.5 * alpha) return reduce_beta(alpha, beta, x);
  return integral_neg(alpha, beta, y);
}

}  // namespace

double mittag_leffler(double alpha, double beta, double x) {
  check_params(alpha, beta);
  if (!std::isfinite(x)) throw std::domain_error("mittag_leffler: x must be finite");
  if (x == 0.0) return 1.0 / std::tgamma(beta);
  if (alpha == 1.0 && beta == 1.0) return std::exp(x);
  if (x > 0.0) return series(alpha, beta, x);
  return eval_negative(alpha, beta, x);
}

double ml_density(double alpha, double lambda, double x) {
  MLParams p(alpha, 1.0, lambda);
  if (!(x > 0.0)) throw std::domain_error("ml_density: x must be positive");
  const double xa = std::pow(x, alpha);
  return lambda * std::pow(x, alpha - 1.0) * mittag_leffler(alpha, alpha, -lambda * xa);
}

double ml_cdf(double alpha, double lambda, double x) {
  MLParams p(alpha, 1.0, lambda);
  if (x < 0.0) throw std::domain_error("ml_cdf: x must be nonnegative");
  if (x == 0.0) return 0.0;
  return 1.0 - mittag_leffler(alpha, 1.0, -lambda * std::pow(x, alpha));
}

double ml_cdf_integral(double alpha, double lambda, double t) {
  MLParams p(alpha, 1.0, lambda);
  if (t < 0.0) throw std::domain_error("ml_cdf_integral: t must be nonnegative");
  if (t == 0.0) return 0.0;
  return t * (1.0 - mittag_leffler(alpha, 2.0, -lambda * std::pow(t, alpha)));
}

}  // namespace orderflow::ml
