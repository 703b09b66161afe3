#include "orderflow/limits.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "orderflow/rng.hpp"
#include "orderflow/specialfn.hpp"

namespace orderflow::limits {

VolterraGrid::VolterraGrid(double alpha_, double lambda_, Eigen::Index n_steps_, double horizon)
    : n_steps(n_steps_), dt(horizon / double(n_steps_)), alpha(alpha_), lambda(lambda_) {
  if (n_steps < 256) throw std::invalid_argument("VolterraGrid: need at least 2^8 steps");
  if (!(horizon > 0.0)) throw std::invalid_argument("VolterraGrid: horizon must be positive");
  weights.resize(n_steps);
  double prev = 0.0;
  for (Eigen::Index m = 1; m <= n_steps; ++m) {
    const double cur = ml::ml_cdf(alpha, lambda, dt * double(m));
    weights[m - 1] = cur - prev;
    prev = cur;
  }
  if ((weights <= 0.0).any()) throw std::runtime_error("VolterraGrid: nonpositive cell weight");
}

namespace {

// one side of the core pair; conv uses left-point values of the driver
void core_side(const VolterraGrid& g, const Eigen::ArrayXd& mean_path, double noise_coef,
               Rng& rng, Eigen::ArrayXd& F, Eigen::ArrayXd& Z, bool deterministic_only) {
  const Eigen::Index n = g.n_steps;
  F.setZero(n + 1);
  Z.setZero(n + 1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    double conv = 0.0;
    for (Eigen::Index j = 1; j < k; ++j) conv += Z[j] * g.weights[k - j - 1];  // cell lag k-j
    double Fk = mean_path[k] + noise_coef * conv;
    if (Fk < F[k - 1]) Fk = F[k - 1];
    F[k] = Fk;
    const double dF = F[k] - F[k - 1];
    const double xi = deterministic_only ? 0.0 : rng.normal();
    Z[k] = Z[k - 1] + std::sqrt(dF) * xi;
  }
}

}  // namespace

CoreLimit simulate_core_limit(double alpha0, double lambda0, double mu0, const VolterraGrid& grid,
                              std::uint64_t seed, bool deterministic_only) {
  if (grid.alpha != alpha0 || grid.lambda != lambda0)
    throw std::invalid_argument("simulate_core_limit: grid built for different kernel");
  if (!(mu0 > 0.0) || !(lambda0 > 0.0))
    throw std::invalid_argument("simulate_core_limit: positive mu0, lambda0 required");
  const Eigen::Index n = grid.n_steps;
  Eigen::ArrayXd g(n + 1);
  g[0] = 0.0;
  for (Eigen::Index k = 1; k <= n; ++k)
    g[k] = ml::ml_cdf_integral(alpha0, lambda0, grid.dt * double(k));

  const double c = 1.0 / std::sqrt(mu0 * lambda0);
  Rng rng_p(seed, 0xC0, 1);
  Rng rng_m(seed, 0xC0, 2);
  Eigen::ArrayXd Fp, Zp, Fm, Zm;
  core_side(grid, g, c, rng_p, Fp, Zp, deterministic_only);
  core_side(grid, g, c, rng_m, Fm, Zm, deterministic_only);

  CoreLimit out;
  out.F = PathGrid(0.0, grid.dt, Fp + Fm);
  out.V = PathGrid(0.0, grid.dt, Fp - Fm);
  out.Zf = PathGrid(0.0, grid.dt, Zp + Zm);
  out.Zv = PathGrid(0.0, grid.dt, Zp - Zm);
  return out;
}

ReactionLimit simulate_reaction_limit(double alpha1, double lambda1, double mu1, const PathGrid& F,
                                      const VolterraGrid& grid, std::uint64_t seed,
                                      bool deterministic_only) {
  if (!(alpha1 > 0.5) || !(alpha1 < 1.0))
    throw std::invalid_argument("simulate_reaction_limit: alpha1 must be in (1/2,1)");
  if (grid.alpha != alpha1 || grid.lambda != lambda1)
    throw std::invalid_argument("simulate_reaction_limit: grid built for different kernel");
  if (F.size() != grid.n_steps + 1 || std::abs(F.dt - grid.dt) > 1e-15)
    throw std::invalid_argument("simulate_reaction_limit: F grid mismatch");
  const Eigen::Index n = grid.n_steps;
  const double cz = 1.0 / (2.0 * std::sqrt(lambda1 * mu1));
  Rng rng(seed, 0xEE, 0);

  Eigen::ArrayXd X = Eigen::ArrayXd::Zero(n + 1);
  Eigen::ArrayXd Zp = Eigen::ArrayXd::Zero(n + 1);
  Eigen::ArrayXd Zm = Eigen::ArrayXd::Zero(n + 1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    double convF = 0.0;
    double convZ = 0.0;
    for (Eigen::Index j = 1; j < k; ++j) {
      const double w = grid.weights[k - j - 1];
      convF += F.v[j] * w;
      convZ += (Zp[j] + Zm[j]) * w;
    }
    double Xk = 0.5 * convF + cz * convZ;
    if (Xk < X[k - 1]) Xk = X[k - 1];
    X[k] = Xk;
    const double dX = X[k] - X[k - 1];
    const double sd = std::sqrt(dX);
    const double xp = deterministic_only ? 0.0 : rng.normal();
    const double xm = deterministic_only ? 0.0 : rng.normal();
    Zp[k] = Zp[k - 1] + sd * xp;
    Zm[k] = Zm[k - 1] + sd * xm;
  }
  ReactionLimit out;
  out.X = PathGrid(0.0, grid.dt, std::move(X));
  out.Zdiff = PathGrid(0.0, grid.dt, Zp - Zm);
  return out;
}

SignedCoefficients signed_limit_coefficients(const scaling::LimitParams& lp,
                                             const kernels::KernelMatrixSpec& mx) {
  const double d = mx.k2_norm();
  if (!(d > 0.0) || !(d < 1.0))
    throw std::invalid_argument("signed_limit_coefficients: need 0 < |phi1|-|phi2| < 1");
  const double root = std::sqrt(lp.lambda1 * lp.mu1());
  return {root * d / (1.0 - d), 1.0 / (1.0 - d)};
}

PathGrid simulate_signed_limit(const scaling::LimitParams& lp, const kernels::KernelMatrixSpec& mx,
                               const PathGrid& V, const PathGrid& Zdiff) {
  require_same_grid(V, Zdiff, "simulate_signed_limit");
  const SignedCoefficients c = signed_limit_coefficients(lp, mx);
  PathGrid out;
  out.t0 = V.t0;
  out.dt = V.dt;
  out.v = c.c1 * V.v + c.c2 * Zdiff.v;
  return out;
}

namespace {

Eigen::ArrayXd fgn_autocov(double H, Eigen::Index n, double dt) {
  Eigen::ArrayXd g(n + 1);
  const double scale = std::pow(dt, 2.0 * H);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const double kk = double(k);
    g[k] = 0.5 * scale *
           (std::pow(std::abs(kk + 1.0), 2.0 * H) + std::pow(std::abs(kk - 1.0), 2.0 * H) -
            2.0 * std::pow(kk, 2.0 * H));
  }
  return g;
}

Eigen::ArrayXd fgn_circulant(double H, Eigen::Index n, double dt, Rng& rng, bool& ok) {
  const Eigen::ArrayXd g = fgn_autocov(H, n, dt);
  const Eigen::Index m = 2 * n;
  std::vector<std::complex<double>> row(m);
  for (Eigen::Index k = 0; k <= n; ++k) row[k] = g[k];
  for (Eigen::Index k = 1; k < n; ++k) row[m - k] = g[k];
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> lam(m);
  fft.fwd(lam, row);
  double minev = 0.0;
  for (const auto& l : lam) minev = std::min(minev, l.real());
  if (minev < -1e-9 * g[0]) {
    ok = false;
    return {};
  }
  std::vector<std::complex<double>> spec(m);
  // Hermitian-symmetric Gaussian spectrum: real weights at 0 and n
  const double u0 = rng.normal();
  const double un = rng.normal();
  spec[0] = std::sqrt(std::max(lam[0].real(), 0.0) / double(m)) * u0;
  spec[n] = std::sqrt(std::max(lam[n].real(), 0.0) / double(m)) * un;
  for (Eigen::Index k = 1; k < n; ++k) {
    const double a = rng.normal();
    const double b = rng.normal();
    const double w = std::sqrt(std::max(lam[k].real(), 0.0) / (2.0 * double(m)));
    spec[k] = std::complex<double>(w * a, w * b);
    spec[m - k] = std::conj(spec[k]);
  }
  std::vector<std::complex<double>> out(m);
  fft.inv(out, spec);
  // inv scales by 1/m; undo it to recover the unit-variance construction
  Eigen::ArrayXd inc(n);
  for (Eigen::Index k = 0; k < n; ++k) inc[k] = out[k].real() * double(m);
  ok = true;
  return inc;
}

Eigen::ArrayXd fgn_cholesky(double H, Eigen::Index n, double dt, Rng& rng) {
  const Eigen::ArrayXd g = fgn_autocov(H, n, dt);
  Eigen::MatrixXd C(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) C(i, j) = g[std::abs(i - j)];
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("simulate_fbm: covariance not positive definite");
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal();
  Eigen::VectorXd x = llt.matrixL() * z;
  return x.array();
}

}  // namespace

PathGrid simulate_fbm(double H, Eigen::Index n, double dt, std::uint64_t seed) {
  if (!(H > 0.0) || !(H < 1.0)) throw std::invalid_argument("simulate_fbm: H must be in (0,1)");
  if (!(dt > 0.0) || n < 2) throw std::invalid_argument("simulate_fbm: bad grid");
  Rng rng(seed, 0xF6, 0);
  const bool pow2 = (n & (n - 1)) == 0;
  Eigen::ArrayXd inc;
  if (pow2) {
    bool ok = false;
    inc = fgn_circulant(H, n, dt, rng, ok);
    if (!ok) {
      if (n <= 1024)
        inc = fgn_cholesky(H, n, dt, rng);
      else
        throw std::runtime_error("simulate_fbm: circulant embedding failed for large n");
    }
  } else if (n <= 1024) {
    inc = fgn_cholesky(H, n, dt, rng);
  } else {
    throw std::invalid_argument("simulate_fbm: n must be a power of two (or <= 1024)");
  }
  Eigen::ArrayXd path(n + 1);
  path[0] = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) path[k + 1] = path[k] + inc[k];
  return PathGrid(0.0, dt, std::move(path));
}

PathGrid simulate_mixed_fbm(const MixedFbmParams& p, Eigen::Index n, double dt,
                            std::uint64_t seed) {
  PathGrid out(0.0, dt, Eigen::ArrayXd::Zero(n + 1));
  if (p.sigma_H > 0.0) {
    const PathGrid bh = simulate_fbm(p.H, n, dt, seed);
    out.v += p.sigma_H * bh.v;
  }
  if (p.sigma_W > 0.0) {
    Rng rng(seed, 0xBB, 0);
    const double sd = p.sigma_W * std::sqrt(dt);
    double acc = 0.0;
    for (Eigen::Index k = 1; k <= n; ++k) {
      acc += sd * rng.normal();
      out.v[k] += acc;
    }
  }
  return out;
}

}  // namespace orderflow::limits
