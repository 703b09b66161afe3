#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orderflow/grid.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow::hawkes {

enum class Mark : std::uint8_t { core_buy = 0, core_sell = 1, react_buy = 2, react_sell = 3 };

inline int sign_of(Mark m) { return (m == Mark::core_buy || m == Mark::react_buy) ? +1 : -1; }
inline bool is_core(Mark m) { return m == Mark::core_buy || m == Mark::core_sell; }
const char* mark_label(Mark m);   // CB / CS / RB / RS
Mark mark_from_label(const std::string& s);

// Time-sorted marked events on [0, T].
struct EventStream {
  double horizon = 0.0;
  std::vector<double> times;
  std::vector<Mark> marks;

  std::size_t size() const { return times.size(); }
  std::size_t count(Mark m) const;
};

struct TwoLayerParams {
  double nu;                           // core baseline
  double a0;                           // core kernel mass, in [0, 1)
  kernels::KernelSpec core_kernel;
  double a1;                           // reaction matrix mass, in [0, 1)
  kernels::KernelMatrixSpec reaction;

  TwoLayerParams(double nu_, double a0_, kernels::KernelSpec core, double a1_,
                 kernels::KernelMatrixSpec matrix);
};

// Exact branching (cluster) samplers.  Identical (params, T, seed) give a
// bit-identical stream at any thread count: immigrants and every cluster draw
// from streams derived from (seed, side, root index).
EventStream simulate_core(double nu, double a0, const kernels::KernelSpec& kernel, double T,
                          std::uint64_t seed);
EventStream simulate_two_layer(const TwoLayerParams& params, double T, std::uint64_t seed);

// Ogata thinning sampler of the same law; exp_mixture kernels only.  Used to
// cross-validate the branching construction.
EventStream simulate_thinning(const TwoLayerParams& params, double T, std::uint64_t seed);

// lambda per mark evaluated on the grid by direct summation over past events
struct IntensityPath {
  PathGrid core_buy, core_sell, react_buy, react_sell;
};
IntensityPath intensity_path(const EventStream& stream, const TwoLayerParams& params,
                             double dt, Eigen::Index n);

// N_type(t) - Lambda_type(t) with the compensator evaluated exactly from the
// kernel tail integrals.
IntensityPath martingale_residual(const EventStream& stream, const TwoLayerParams& params,
                                  double dt, Eigen::Index n);

// Counting paths on a uniform grid: U (all), S (signed), F (core total),
// V (core signed).
struct AggregateFlows {
  PathGrid U, S, F, V;
};
AggregateFlows aggregate_flows(const EventStream& stream, double dt, Eigen::Index n);

// counting path for an arbitrary predicate over marks
PathGrid counting_path(const EventStream& stream, double dt, Eigen::Index n,
                       const std::vector<int>& weight_per_mark);

}  // namespace orderflow::hawkes
