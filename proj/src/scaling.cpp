#include "orderflow/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace orderflow::scaling {

namespace {

void validate(const LimitParams& lp) {
  if (!(lp.alpha0 > 0.25) || !(lp.alpha0 < 0.5))
    throw std::invalid_argument("LimitParams: alpha0 must be in (1/4, 1/2)");
  if (!(lp.lambda0 > 0.0) || !(lp.mu0 > 0.0) || !(lp.lambda1 > 0.0) || !(lp.K0 > 0.0))
    throw std::invalid_argument("LimitParams: lambda0, mu0, lambda1, K0 must be positive");
  const double m1 = lp.mu1();
  if (!(m1 > 0.0) || !std::isfinite(m1)) throw std::invalid_argument("LimitParams: mu1 not finite");
}

}  // namespace

LimitParams::LimitParams(double alpha0_, double lambda0_, double mu0_, double lambda1_, double K0_)
    : alpha0(alpha0_), lambda0(lambda0_), mu0(mu0_), lambda1(lambda1_), K0(K0_) {
  validate(*this);
}

LimitParams::LimitParams(double alpha0_, double lambda0_, double mu0_, double lambda1_, double K0_,
                         double user_mu1)
    : LimitParams(alpha0_, lambda0_, mu0_, lambda1_, K0_) {
  const double derived = mu1();
  if (std::abs(user_mu1 - derived) > 1e-8 * std::abs(derived))
    throw std::invalid_argument("LimitParams: supplied mu1 contradicts the derived value");
}

double LimitParams::mu1() const {
  const double g = std::tgamma(1.0 - alpha0);
  return mu0 * alpha0 * alpha0 / (lambda0 * K0 * K0 * g * g);
}

double FiniteHorizonParams::signed_factor() const { return std::sqrt(unsigned_factor()); }

FiniteHorizonParams finite_horizon_params(const LimitParams& lp, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("finite_horizon_params: T must be positive");
  const double g = std::tgamma(1.0 - lp.alpha0);
  const double one_minus_a0 = lp.lambda0 * lp.K0 * g / lp.alpha0 * std::pow(T, -lp.alpha0);
  const double nu = lp.mu0 * lp.alpha0 / (lp.K0 * g) * std::pow(T, lp.alpha0 - 1.0);
  const double one_minus_a1 = lp.lambda1 * std::pow(T, -lp.alpha1());
  FiniteHorizonParams fh{T, nu, 1.0 - one_minus_a0, 1.0 - one_minus_a1};
  if (!(fh.a0_T > 0.0) || !(fh.a0_T < 1.0) || !(fh.a1_T > 0.0) || !(fh.a1_T < 1.0) ||
      !(fh.nu_T > 0.0))
    throw std::invalid_argument("finite_horizon_params: horizon too small for this regime");
  return fh;
}

namespace {

PathGrid rescale_with(const PathGrid& path, const FiniteHorizonParams& fh, double factor) {
  if (path.back_time() > fh.T * (1.0 + 1e-9))
    throw std::invalid_argument("rescale: path extends beyond the horizon");
  PathGrid out;
  out.t0 = path.t0 / fh.T;
  out.dt = path.dt / fh.T;
  out.v = factor * path.v;
  return out;
}

}  // namespace

PathGrid rescale_core(const PathGrid& path, const FiniteHorizonParams& fh) {
  return rescale_with(path, fh, fh.core_factor());
}

PathGrid rescale_unsigned(const PathGrid& path, const FiniteHorizonParams& fh) {
  return rescale_with(path, fh, fh.unsigned_factor());
}

PathGrid rescale_signed(const PathGrid& path, const FiniteHorizonParams& fh) {
  return rescale_with(path, fh, fh.signed_factor());
}

}  // namespace orderflow::scaling
