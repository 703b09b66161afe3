#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace orderflow {

// One value series on a uniform time grid t0 + i*dt.
struct PathGrid {
  double t0 = 0.0;
  double dt = 0.0;
  Eigen::ArrayXd v;

  PathGrid() = default;
  PathGrid(double t0_, double dt_, Eigen::ArrayXd values)
      : t0(t0_), dt(dt_), v(std::move(values)) {
    if (dt <= 0.0) throw std::invalid_argument("PathGrid: dt must be positive");
  }

  Eigen::Index size() const { return v.size(); }
  double time(Eigen::Index i) const { return t0 + dt * double(i); }
  double back_time() const { return time(v.size() - 1); }
};

inline void require_same_grid(const PathGrid& a, const PathGrid& b, const char* what) {
  if (a.size() != b.size() || a.dt != b.dt || a.t0 != b.t0)
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// Kernel values sampled at k*dt, k = 0..n, with optional analytic metadata.
struct GridKernel {
  double dt = 0.0;
  Eigen::ArrayXd v;
  double l1_mass = -1.0;     // total integral over [0, inf) when known exactly
  double tail_alpha = -1.0;  // power-law tail exponent when known

  Eigen::Index size() const { return v.size(); }
  double horizon() const { return dt * double(v.size() - 1); }
};

}  // namespace orderflow
