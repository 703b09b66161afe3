#pragma once

#include "orderflow/grid.hpp"

namespace orderflow::scaling {

// Asymptotic parameters of the nearly-unstable regime.  alpha1, mu1 and the
// exponents H0, H1 are pinned by alpha0 and the other inputs:
//   alpha1 = 2 alpha0,   H0 = 2 alpha0,   H1 = alpha1 - 1/2,
//   mu1 = mu0 alpha0^2 / (lambda0 K0^2 Gamma(1-alpha0)^2).
struct LimitParams {
  double alpha0;
  double lambda0;
  double mu0;
  double lambda1;
  double K0;

  LimitParams(double alpha0_, double lambda0_, double mu0_, double lambda1_, double K0_);

  // optional consistency check against a caller-supplied mu1
  LimitParams(double alpha0_, double lambda0_, double mu0_, double lambda1_, double K0_,
              double user_mu1);

  double alpha1() const { return 2.0 * alpha0; }
  double H0() const { return 2.0 * alpha0; }
  double H1() const { return alpha1() - 0.5; }
  double mu1() const;
};

// Concrete parameters of the finite-horizon model implied by exact-equality
// versions of the asymptotic relations.
struct FiniteHorizonParams {
  double T;
  double nu_T;
  double a0_T;
  double a1_T;

  double core_factor() const { return (1.0 - a0_T) / (T * nu_T); }
  double unsigned_factor() const { return (1.0 - a0_T) * (1.0 - a1_T) / (T * nu_T); }
  double signed_factor() const;
};

FiniteHorizonParams finite_horizon_params(const LimitParams& lp, double T);

// Map a path observed on [0, T] to normalized time [0, 1] and apply the
// corresponding normalization of the regime.
PathGrid rescale_core(const PathGrid& path, const FiniteHorizonParams& fh);
PathGrid rescale_unsigned(const PathGrid& path, const FiniteHorizonParams& fh);
PathGrid rescale_signed(const PathGrid& path, const FiniteHorizonParams& fh);

}  // namespace orderflow::scaling
