#pragma once

#include <cstdint>

#include "orderflow/grid.hpp"
#include "orderflow/kernels.hpp"
#include "orderflow/scaling.hpp"

namespace orderflow::limits {

// Uniform grid on [0, horizon] with exact per-cell integrals of the
// Mittag-Leffler kernel, w[m] = rho(m dt) - rho((m-1) dt).
struct VolterraGrid {
  Eigen::Index n_steps;
  double dt;
  double alpha;
  double lambda;
  Eigen::ArrayXd weights;  // size n_steps, cell integrals of f^{alpha,lambda}

  VolterraGrid(double alpha_, double lambda_, Eigen::Index n_steps_, double horizon = 1.0);
};

struct CoreLimit {
  PathGrid F;   // F+ + F-, nondecreasing
  PathGrid V;   // F+ - F-
  PathGrid Zf;  // martingale of F (Z+ + Z-)
  PathGrid Zv;  // martingale of V (Z+ - Z-)
};

// Lagged-variance explicit Euler scheme for the core limit pair.  Martingale
// increments over a step use the latest available F-increment as variance,
// floored at zero; F+ and F- are clamped nondecreasing.  First moment is
// exact on the grid.  `deterministic_only` freezes the noise (test hook).
CoreLimit simulate_core_limit(double alpha0, double lambda0, double mu0, const VolterraGrid& grid,
                              std::uint64_t seed, bool deterministic_only = false);

struct ReactionLimit {
  PathGrid X;      // unsigned reaction limit (U = 2X), nondecreasing
  PathGrid Zdiff;  // Z+ - Z-, quadratic variation 2X
};

ReactionLimit simulate_reaction_limit(double alpha1, double lambda1, double mu1, const PathGrid& F,
                                      const VolterraGrid& grid, std::uint64_t seed,
                                      bool deterministic_only = false);

// S = c1 V + c2 Zdiff with the coefficients fixed by the kernel masses:
//   c1 = sqrt(lambda1 mu1) d / (1 - d),  c2 = 1 / (1 - d),  d = m1 - m2.
PathGrid simulate_signed_limit(const scaling::LimitParams& lp, const kernels::KernelMatrixSpec& mx,
                               const PathGrid& V, const PathGrid& Zdiff);

struct SignedCoefficients {
  double c1;
  double c2;
};
SignedCoefficients signed_limit_coefficients(const scaling::LimitParams& lp,
                                             const kernels::KernelMatrixSpec& mx);

struct MixedFbmParams {
  double H;
  double sigma_W;
  double sigma_H;

  MixedFbmParams(double H_, double sW, double sH) : H(H_), sigma_W(sW), sigma_H(sH) {
    if (!(H > 0.5) || !(H < 1.0)) throw std::invalid_argument("MixedFbmParams: H in (1/2,1)");
    if (sigma_W < 0.0 || sigma_H < 0.0 || (sigma_W == 0.0 && sigma_H == 0.0))
      throw std::invalid_argument("MixedFbmParams: need a positive component");
  }
};

// Exact-in-law fractional Brownian motion path (n increments, cumulated,
// B(0) = 0) via circulant embedding; Cholesky fallback for n <= 1024.
PathGrid simulate_fbm(double H, Eigen::Index n, double dt, std::uint64_t seed);

// sigma_W * W + sigma_H * B^H with independent components
PathGrid simulate_mixed_fbm(const MixedFbmParams& p, Eigen::Index n, double dt,
                            std::uint64_t seed);

}  // namespace orderflow::limits
