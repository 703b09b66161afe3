#pragma once

#include <cstdint>
#include <vector>

#include "orderflow/grid.hpp"

namespace orderflow::kernels {

// Unit-L1 excitation kernel.  Two families:
//   shifted_pareto: phi(t) = alpha (1+t)^{-(1+alpha)}, alpha in (0,1) --
//     completely monotone, exact inverse CDF, tail constant
//     alpha t^alpha int_t^inf phi -> alpha.
//   exp_mixture: phi(t) = sum_i w_i r_i e^{-r_i t}, weights summing to one --
//     validation alternative with a Markovian intensity.
class KernelSpec {
 public:
  enum class Family { shifted_pareto, exp_mixture };

  static KernelSpec shifted_pareto(double tail_alpha);
  static KernelSpec exp_mixture(std::vector<double> weights, std::vector<double> rates);

  Family family() const { return family_; }
  double tail_alpha() const { return tail_alpha_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& rates() const { return rates_; }

  double density(double t) const;       // kernel value at t >= 0
  double cdf(double t) const;           // int_0^t density
  double tail(double t) const;          // int_t^inf density
  double inverse_cdf(double u) const;   // offspring delay sampler, u in (0,1)

  // kernel values on a uniform grid 0..n*dt
  GridKernel sample(double dt, Eigen::Index n) const;

 private:
  KernelSpec() = default;
  Family family_ = Family::shifted_pareto;
  double tail_alpha_ = 0.0;        // shifted_pareto only
  std::vector<double> weights_;    // exp_mixture only
  std::vector<double> rates_;
};

double kernel_eval(const KernelSpec& spec, double t);
double offspring_delay(const KernelSpec& spec, double u);

// Symmetric reaction kernel pair: phi1 (same side) and phi2 (opposite side)
// as unit-norm shapes with L1 masses m1 + m2 = 1, m1 > m2.
struct KernelMatrixSpec {
  KernelSpec phi1;
  KernelSpec phi2;
  double m1 = 0.0;
  double m2 = 0.0;

  KernelMatrixSpec(KernelSpec phi1_shape, double mass1, KernelSpec phi2_shape, double mass2);

  double k2_norm() const { return m1 - m2; }
  // k1(t) = m1 phi1 + m2 phi2,  k2(t) = m1 phi1 - m2 phi2
  double k1(double t) const;
  double k2(double t) const;
  double k2_tail(double t) const;  // int_t^inf k2
};

// Eigen-kernels of the reaction matrix sampled on a uniform grid:
// k1 = m1 phi1 + m2 phi2 (norm 1), k2 = m1 phi1 - m2 phi2 (norm m1 - m2).
std::pair<GridKernel, GridKernel> eigen_kernels(const KernelMatrixSpec& spec, double dt,
                                                Eigen::Index n);

// Resolvent psi = sum_{k>=1} (a phi)^{*k} on the kernel's grid, computed by
// Picard iteration of psi = a phi + a phi * psi with trapezoidal convolution.
// Throws if the sup-norm residual has not reached `tol` within `max_iter`.
GridKernel resolvent(const GridKernel& kernel, double a, double tol = 1e-6,
                     int max_iter = 10000);

// sup-norm residual of the renewal identity for a candidate resolvent
double renewal_residual(const GridKernel& kernel, double a, const GridKernel& psi);

}  // namespace orderflow::kernels
