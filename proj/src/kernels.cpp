#include "orderflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orderflow::kernels {

KernelSpec KernelSpec::shifted_pareto(double tail_alpha) {
  if (!(tail_alpha > 0.0) || !(tail_alpha < 1.0))
    throw std::invalid_argument("shifted_pareto: tail alpha must be in (0,1)");
  KernelSpec k;
  k.family_ = Family::shifted_pareto;
  k.tail_alpha_ = tail_alpha;
  return k;
}

KernelSpec KernelSpec::exp_mixture(std::vector<double> weights, std::vector<double> rates) {
  if (weights.empty() || weights.size() != rates.size())
    throw std::invalid_argument("exp_mixture: weights and rates must be nonempty, equal length");
  double total = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !(rates[i] > 0.0))
      throw std::invalid_argument("exp_mixture: weights and rates must be positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("exp_mixture: weights must sum to one");
  KernelSpec k;
  k.family_ = Family::exp_mixture;
  k.weights_ = std::move(weights);
  k.rates_ = std::move(rates);
  return k;
}

double KernelSpec::density(double t) const {
  if (t < 0.0) throw std::domain_error("kernel density: t must be nonnegative");
  if (family_ == Family::shifted_pareto)
    return tail_alpha_ * std::pow(1.0 + t, -(1.0 + tail_alpha_));
  double s = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * rates_[i] * std::exp(-rates_[i] * t);
  return s;
}

double KernelSpec::cdf(double t) const {
  if (t < 0.0) throw std::domain_error("kernel cdf: t must be nonnegative");
  if (family_ == Family::shifted_pareto) return 1.0 - std::pow(1.0 + t, -tail_alpha_);
  double s = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * (1.0 - std::exp(-rates_[i] * t));
  return s;
}

double KernelSpec::tail(double t) const {
  if (t < 0.0) throw std::domain_error("kernel tail: t must be nonnegative");
  if (family_ == Family::shifted_pareto) return std::pow(1.0 + t, -tail_alpha_);
  double s = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * std::exp(-rates_[i] * t);
  return s;
}

double KernelSpec::inverse_cdf(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) throw std::domain_error("inverse_cdf: u must be in (0,1)");
  if (family_ == Family::shifted_pareto) return std::pow(1.0 - u, -1.0 / tail_alpha_) - 1.0;
  // monotone mixture CDF: bracket then bisect with a Newton polish
  double lo = 0.0;
  double hi = 1.0;
  while (cdf(hi) < u) {
    hi *= 2.0;
    if (hi > 1e18) return hi;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < u)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14 * (1.0 + hi)) break;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double d = density(x);
    if (d <= 0.0) break;
    const double step = (cdf(x) - u) / d;
    const double xn = x - step;
    if (xn >= lo && xn <= hi) x = xn;
  }
  return x;
}

GridKernel KernelSpec::sample(double dt, Eigen::Index n) const {
  if (!(dt > 0.0) || n < 1) throw std::invalid_argument("KernelSpec::sample: bad grid");
  GridKernel g;
  g.dt = dt;
  g.v.resize(n + 1);
  for (Eigen::Index i = 0; i <= n; ++i) g.v[i] = density(dt * double(i));
  g.l1_mass = 1.0;
  g.tail_alpha = family_ == Family::shifted_pareto ? tail_alpha_ : -1.0;
  return g;
}

double kernel_eval(const KernelSpec& spec, double t) { return spec.density(t); }

double offspring_delay(const KernelSpec& spec, double u) { return spec.inverse_cdf(u); }

KernelMatrixSpec::KernelMatrixSpec(KernelSpec phi1_shape, double mass1, KernelSpec phi2_shape,
                                   double mass2)
    : phi1(std::move(phi1_shape)), phi2(std::move(phi2_shape)), m1(mass1), m2(mass2) {
  if (!(m1 > 0.0) || m2 < 0.0)
    throw std::invalid_argument("KernelMatrixSpec: masses must be positive (phi2 may be zero)");
  if (std::abs(m1 + m2 - 1.0) > 1e-8)
    throw std::invalid_argument("KernelMatrixSpec: masses must sum to one");
  if (!(m1 > m2))
    throw std::invalid_argument("KernelMatrixSpec: need |phi1| > |phi2|");
}

double KernelMatrixSpec::k1(double t) const { return m1 * phi1.density(t) + m2 * phi2.density(t); }

double KernelMatrixSpec::k2(double t) const { return m1 * phi1.density(t) - m2 * phi2.density(t); }

double KernelMatrixSpec::k2_tail(double t) const { return m1 * phi1.tail(t) - m2 * phi2.tail(t); }

std::pair<GridKernel, GridKernel> eigen_kernels(const KernelMatrixSpec& spec, double dt,
                                                Eigen::Index n) {
  GridKernel k1, k2;
  k1.dt = k2.dt = dt;
  k1.v.resize(n + 1);
  k2.v.resize(n + 1);
  for (Eigen::Index i = 0; i <= n; ++i) {
    const double t = dt * double(i);
    k1.v[i] = spec.k1(t);
    k2.v[i] = spec.k2(t);
  }
  k1.l1_mass = 1.0;
  k2.l1_mass = spec.k2_norm();
  const double ta1 = spec.phi1.tail_alpha();
  const double ta2 = spec.phi2.family() == KernelSpec::Family::shifted_pareto
                         ? spec.phi2.tail_alpha()
                         : ta1;
  k1.tail_alpha = std::min(ta1, ta2) > 0.0 ? std::min(ta1, ta2) : -1.0;
  k2.tail_alpha = k1.tail_alpha;
  return {std::move(k1), std::move(k2)};
}

namespace {

// trapezoidal (phi * psi)(k dt) for all k, O(n^2)
void trap_convolve(const Eigen::ArrayXd& phi, const Eigen::ArrayXd& psi, double dt,
                   Eigen::ArrayXd& out) {
  const Eigen::Index n = phi.size() - 1;
  out.resize(n + 1);
  out[0] = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (Eigen::Index k = 1; k <= n; ++k) {
    double s = 0.5 * (phi[k] * psi[0] + phi[0] * psi[k]);
    for (Eigen::Index j = 1; j < k; ++j) s += phi[k - j] * psi[j];
    out[k] = dt * s;
  }
}

}  // namespace

GridKernel resolvent(const GridKernel& kernel, double a, double tol, int max_iter) {
  if (!(a > 0.0) || !(a < 1.0)) throw std::invalid_argument("resolvent: a must be in (0,1)");
  const double mass = kernel.l1_mass > 0.0 ? kernel.l1_mass : 1.0;
  if (a * mass >= 1.0) throw std::invalid_argument("resolvent: a * |phi| must be < 1");
  const Eigen::ArrayXd aphi = a * kernel.v;
  GridKernel psi;
  psi.dt = kernel.dt;
  psi.v = aphi;
  Eigen::ArrayXd conv;
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    trap_convolve(aphi, psi.v, kernel.dt, conv);
    Eigen::ArrayXd next = aphi + conv;
    residual = (next - psi.v).abs().maxCoeff();
    psi.v = std::move(next);
    if (residual < tol) {
      psi.l1_mass = a * mass / (1.0 - a * mass);
      psi.tail_alpha = kernel.tail_alpha;
      return psi;
    }
  }
  throw std::runtime_error("resolvent: Picard iteration stalled above tolerance");
}

double renewal_residual(const GridKernel& kernel, double a, const GridKernel& psi) {
  Eigen::ArrayXd conv;
  const Eigen::ArrayXd aphi = a * kernel.v;
  trap_convolve(aphi, psi.v, kernel.dt, conv);
  return (psi.v - aphi - conv).abs().maxCoeff();
}

}  // namespace orderflow::kernels
