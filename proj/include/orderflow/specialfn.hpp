#pragma once

#include <stdexcept>

namespace orderflow::ml {

// Parameter bundle for the Mittag-Leffler family E_{alpha,beta} and the
// density f^{alpha,lambda}(x) = lambda x^{alpha-1} E_{alpha,alpha}(-lambda x^alpha).
struct MLParams {
  double alpha;
  double beta;
  double lambda;

  MLParams(double alpha_, double beta_, double lambda_)
      : alpha(alpha_), beta(beta_), lambda(lambda_) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("MLParams: alpha in (0,1]");
    if (!(beta > 0.0)) throw std::invalid_argument("MLParams: beta > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("MLParams: lambda > 0");
  }
};

// E_{alpha,beta}(x) = sum_k x^k / Gamma(alpha k + beta) for alpha in (0,1],
// beta > 0, real x.  Relative accuracy ~1e-11 on x in [-50, 5] for alpha < 1;
// for alpha = 1 it is exact when beta = 1 and series-limited (|x| <~ 15)
// otherwise.  Positive arguments are served by the series up to the overflow
// bound x < (700*alpha)^alpha (result near exp(x^(1/alpha))/alpha).
double mittag_leffler(double alpha, double beta, double x);

// f^{alpha,lambda}(x) for x > 0.
double ml_density(double alpha, double lambda, double x);

// rho^{alpha,lambda}(x) = 1 - E_{alpha,1}(-lambda x^alpha) for x >= 0.
double ml_cdf(double alpha, double lambda, double x);

// int_0^t rho^{alpha,lambda}(u) du = t * (1 - E_{alpha,2}(-lambda t^alpha)).
// This is the mean of the limit flows' deterministic part.
double ml_cdf_integral(double alpha, double lambda, double t);

}  // namespace orderflow::ml
