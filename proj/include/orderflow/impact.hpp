#pragma once

#include <cstdint>

#include "orderflow/grid.hpp"
#include "orderflow/hawkes.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow::impact {

// Decay kernel xi of the no-arbitrage price, sampled on a grid with an exact
// analytic tail beyond it: xi(u) = 1 + sum_i coef_i * tail_i(u).
// xi(0) = total expected tree size per unanticipated event; xi(inf) = 1.
struct DecayKernel {
  GridKernel grid;                       // xi values at k*dt
  std::vector<double> tail_coefs;        // per power-law tail term
  std::vector<double> tail_alphas;       // xi(u) - 1 ~ sum c_i (1+u)^{-a_i}
  double eval(double u) const;
};

struct PropagatorSpec {
  double kappa = 1.0;
  DecayKernel xi_core;   // applied to core events
  DecayKernel xi_react;  // applied to reaction events

  double xi0_core() const { return xi_core.eval(0.0); }
  double xi0_react() const { return xi_react.eval(0.0); }
};

// Single-kernel propagator for a flow whose signed memory is carried by
// `k2` with mass a |k2|: xi(u) = 1 + a int_u^inf k2 / (1 - a |k2|).
// Both event layers are priced with the same kernel.
PropagatorSpec propagator_kernel(const GridKernel& k2, double a, double kappa = 1.0);

// Per-layer propagator of the full two-layer model: core events also carry
// the expected signed core progeny,
//   xi_core(u)  = 1 + tau0 a0 int_u^inf phi0 + tau2 a1 int_u^inf k2,
//   xi_react(u) = 1 + tau2 a1 int_u^inf k2,
// with tau2 = 1/(1 - a1 |k2|), tau0 = 1/((1-a0)(1 - a1 |k2|)).
PropagatorSpec two_layer_propagator(const hawkes::TwoLayerParams& params, double dt,
                                    Eigen::Index n, double kappa = 1.0);

// P_t - P_0 = kappa * sum_{events s <= t} sign(s) xi_layer(t - s)
PathGrid price_path(const hawkes::EventStream& stream, const PropagatorSpec& prop, double dt,
                    Eigen::Index n);

// Normalized analytic impact curve, MI(1) = 1:
//   MI(t) = t^{2-2H0} on (0,1],  t^{2-2H0} - (t-1)^{2-2H0} beyond.
PathGrid mi_curve(double H0, double dt, Eigen::Index n);
double mi_exponent(double H0);  // 2 - 2 H0, with the (3/4, 1) gate
double vol_hurst(double H0);    // 2 H0 - 3/2, with the (3/4, 1) gate

struct MetaorderConfig {
  double rate = 0.1;        // metaorder buy intensity on [0, duration]
  double duration = 0.0;    // execution window; <= horizon / 2
  double horizon = 0.0;     // simulation horizon (default 4 * duration)
  int paths = 500;          // matched pairs
  std::uint64_t seed = 1;
  double kappa = 1.0;
  double lambda_bar = 0.5;  // criticality scale of the approximating pair
  Eigen::Index curve_points = 384;
};

struct MetaorderResult {
  PathGrid curve;           // averaged impact vs normalized time t / duration
  double fitted_exponent;   // log-log slope on t/duration in [0.1, 1]
  double peak;
  double max_se;            // max Monte Carlo standard error on the fit window
  double pair_a;            // mass of the approximating signed pair
  double pair_tail_alpha;   // its kernel tail exponent, 2 H0 - 1
};

// Constant-rate metaorder against the signed-flow approximation of the model:
// ambient flow is a pair of independent Hawkes processes with kernel tail
// 2 H0 - 1 matched to the core criticality; the metaorder is an exogenous
// non-exciting stream of buys, priced like the ambient flow.  The averaged
// price deviation over matched-seed pairs is returned with its fitted
// power-law exponent.
MetaorderResult metaorder_experiment(const hawkes::TwoLayerParams& params,
                                     const MetaorderConfig& cfg);

}  // namespace orderflow::impact
