#include "orderflow/impact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orderflow/rng.hpp"

namespace orderflow::impact {

double DecayKernel::eval(double u) const {
  if (u < 0.0) throw std::domain_error("DecayKernel: negative lag");
  const double horizon = grid.horizon();
  if (u <= horizon) {
    const double x = u / grid.dt;
    const Eigen::Index i = std::min<Eigen::Index>(Eigen::Index(x), grid.size() - 2);
    const double w = x - double(i);
    return grid.v[i] * (1.0 - w) + grid.v[i + 1] * w;
  }
  double s = 1.0;
  for (std::size_t i = 0; i < tail_coefs.size(); ++i)
    s += tail_coefs[i] * std::pow(1.0 + u, -tail_alphas[i]);
  return s;
}

namespace {

void check_xi(const DecayKernel& xi) {
  if ((xi.grid.v < 1.0 - 1e-9).any())
    throw std::runtime_error("propagator: xi dips below one");
  for (Eigen::Index i = 1; i < xi.grid.size(); ++i)
    if (xi.grid.v[i] > xi.grid.v[i - 1] + 1e-12)
      throw std::runtime_error("propagator: xi is not nonincreasing");
}

// cumulative trapezoidal integral of a grid kernel
Eigen::ArrayXd cum_trapz(const GridKernel& k) {
  Eigen::ArrayXd c(k.size());
  c[0] = 0.0;
  for (Eigen::Index i = 1; i < k.size(); ++i)
    c[i] = c[i - 1] + 0.5 * k.dt * (k.v[i] + k.v[i - 1]);
  return c;
}

}  // namespace

PropagatorSpec propagator_kernel(const GridKernel& k2, double a, double kappa) {
  if (!(a >= 0.0)) throw std::invalid_argument("propagator_kernel: a must be nonnegative");
  const Eigen::ArrayXd cum = cum_trapz(k2);
  // exact-by-construction total mass where known; otherwise grid + power tail
  double beyond = 0.0;
  double tail_coef_kernel = 0.0;
  if (k2.tail_alpha > 0.0) {
    const double T = k2.horizon();
    tail_coef_kernel = k2.v[k2.size() - 1] * std::pow(1.0 + T, 1.0 + k2.tail_alpha);
    beyond = tail_coef_kernel * std::pow(1.0 + T, -k2.tail_alpha) / k2.tail_alpha;
  }
  const double mass = k2.l1_mass >= 0.0 ? k2.l1_mass : cum[cum.size() - 1] + beyond;
  if (!(a * mass < 1.0)) throw std::invalid_argument("propagator_kernel: a |k2| must be < 1");
  const double tau = 1.0 / (1.0 - a * mass);

  DecayKernel xi;
  xi.grid.dt = k2.dt;
  xi.grid.v = 1.0 + tau * a * (mass - cum).max(0.0);
  if (k2.tail_alpha > 0.0 && tail_coef_kernel > 0.0) {
    xi.tail_coefs.push_back(tau * a * tail_coef_kernel / k2.tail_alpha);
    xi.tail_alphas.push_back(k2.tail_alpha);
  }
  check_xi(xi);
  PropagatorSpec prop;
  prop.kappa = kappa;
  prop.xi_core = xi;
  prop.xi_react = std::move(xi);
  return prop;
}

PropagatorSpec two_layer_propagator(const hawkes::TwoLayerParams& params, double dt,
                                    Eigen::Index n, double kappa) {
  const double A2 = params.a1 * params.reaction.k2_norm();
  if (!(A2 < 1.0)) throw std::invalid_argument("two_layer_propagator: a1 |k2| must be < 1");
  const double tau2 = 1.0 / (1.0 - A2);
  const double tau0 = tau2 / (1.0 - params.a0);

  auto react_tail = [&](double u) { return params.a1 * params.reaction.k2_tail(u); };
  auto core_tail = [&](double u) { return params.a0 * params.core_kernel.tail(u); };

  PropagatorSpec prop;
  prop.kappa = kappa;
  for (DecayKernel* xi : {&prop.xi_react, &prop.xi_core}) {
    const bool core = xi == &prop.xi_core;
    xi->grid.dt = dt;
    xi->grid.v.resize(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
      const double u = dt * double(i);
      double v = 1.0 + tau2 * react_tail(u);
      if (core) v += tau0 * core_tail(u);
      xi->grid.v[i] = v;
    }
    using kernels::KernelSpec;
    if (params.reaction.phi1.family() == KernelSpec::Family::shifted_pareto &&
        params.a1 > 0.0) {
      xi->tail_coefs.push_back(tau2 * params.a1 * params.reaction.m1);
      xi->tail_alphas.push_back(params.reaction.phi1.tail_alpha());
    }
    if (params.reaction.phi2.family() == KernelSpec::Family::shifted_pareto &&
        params.reaction.m2 > 0.0 && params.a1 > 0.0) {
      xi->tail_coefs.push_back(-tau2 * params.a1 * params.reaction.m2);
      xi->tail_alphas.push_back(params.reaction.phi2.tail_alpha());
    }
    if (core && params.core_kernel.family() == KernelSpec::Family::shifted_pareto &&
        params.a0 > 0.0) {
      xi->tail_coefs.push_back(tau0 * params.a0);
      xi->tail_alphas.push_back(params.core_kernel.tail_alpha());
    }
  }
  check_xi(prop.xi_react);
  check_xi(prop.xi_core);
  return prop;
}

PathGrid price_path(const hawkes::EventStream& stream, const PropagatorSpec& prop, double dt,
                    Eigen::Index n) {
  if (!(dt > 0.0) || n < 1) throw std::invalid_argument("price_path: bad grid");
  PathGrid out(0.0, dt, Eigen::ArrayXd::Zero(n + 1));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (Eigen::Index i = 0; i <= n; ++i) {
    const double t = dt * double(i);
    double s = 0.0;
    for (std::size_t e = 0; e < stream.size(); ++e) {
      if (stream.times[e] > t) break;
      const auto m = stream.marks[e];
      const double lag = t - stream.times[e];
      const double xi = hawkes::is_core(m) ? prop.xi_core.eval(lag) : prop.xi_react.eval(lag);
      s += hawkes::sign_of(m) * xi;
    }
    out.v[i] = prop.kappa * s;
  }
  return out;
}

// the admissibility gate includes the square-root boundary H0 = 3/4
double mi_exponent(double H0) {
  if (!(H0 >= 0.75) || !(H0 < 1.0)) throw std::domain_error("mi_exponent: H0 must be in [3/4,1)");
  return 2.0 - 2.0 * H0;
}

double vol_hurst(double H0) {
  if (!(H0 >= 0.75) || !(H0 < 1.0)) throw std::domain_error("vol_hurst: H0 must be in [3/4,1)");
  return 2.0 * H0 - 1.5;
}

PathGrid mi_curve(double H0, double dt, Eigen::Index n) {
  const double e = mi_exponent(H0);
  PathGrid out(dt, dt, Eigen::ArrayXd::Zero(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = dt * double(i + 1);
    out.v[i] = t <= 1.0 ? std::pow(t, e) : std::pow(t, e) - std::pow(t - 1.0, e);
  }
  return out;
}

MetaorderResult metaorder_experiment(const hawkes::TwoLayerParams& params,
                                     const MetaorderConfig& cfg) {
  using kernels::KernelSpec;
  if (cfg.rate < 0.0) throw std::invalid_argument("metaorder: rate must be nonnegative");
  if (!(cfg.duration > 0.0)) throw std::invalid_argument("metaorder: duration must be positive");
  if (cfg.paths < 100) throw std::invalid_argument("metaorder: need at least 100 pairs");
  const double horizon = cfg.horizon > 0.0 ? cfg.horizon : 4.0 * cfg.duration;
  if (cfg.duration > horizon / 2.0)
    throw std::invalid_argument("metaorder: duration must be at most half the horizon");
  if (params.core_kernel.family() != KernelSpec::Family::shifted_pareto)
    throw std::invalid_argument("metaorder: shifted_pareto core kernel required");

  // Signed-flow approximation: an independent Hawkes pair whose kernel tail
  // is 2 H0 - 1 and whose distance from criticality matches the core's.
  const double alpha0 = params.core_kernel.tail_alpha();
  // H0 = 2 alpha0; the pair kernel tail is 2 H0 - 1
  const double abar_tail = std::clamp(4.0 * alpha0 - 1.0, 0.05, 0.95);
  const double g0 = std::tgamma(1.0 - alpha0);
  const double T_eff = std::pow(g0 / std::max(1.0 - params.a0, 1e-300), 1.0 / alpha0);
  const double one_minus_abar =
      std::min(cfg.lambda_bar * std::tgamma(1.0 - abar_tail) * std::pow(T_eff, -abar_tail), 0.999);
  const double abar = 1.0 - one_minus_abar;
  const double nu_bar = std::pow(T_eff, abar_tail - 1.0) / std::tgamma(1.0 - abar_tail);
  const KernelSpec pair_kernel = KernelSpec::shifted_pareto(abar_tail);

  const Eigen::Index gp = cfg.curve_points;
  const double dt = horizon / double(gp);
  PropagatorSpec prop = propagator_kernel(pair_kernel.sample(dt, gp), abar, cfg.kappa);

  Eigen::ArrayXXd diffs(cfg.paths, gp + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int p = 0; p < cfg.paths; ++p) {
    const auto ambient =
        hawkes::simulate_core(nu_bar, abar, pair_kernel, horizon, Rng(cfg.seed, 0xA0, p)());
    // exogenous metaorder: constant-rate buys on [0, duration], not exciting
    Rng mo_rng(cfg.seed, 0x3D, p);
    const std::int64_t n_mo = mo_rng.poisson(cfg.rate * cfg.duration);
    std::vector<double> mo_times(n_mo);
    for (auto& t : mo_times) t = cfg.duration * mo_rng.uniform();
    std::sort(mo_times.begin(), mo_times.end());

    hawkes::EventStream with_mo = ambient;
    for (const double t : mo_times) {
      with_mo.times.push_back(t);
      with_mo.marks.push_back(hawkes::Mark::core_buy);
    }
    std::vector<std::size_t> order(with_mo.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return with_mo.times[a] < with_mo.times[b];
    });
    hawkes::EventStream sorted;
    sorted.horizon = horizon;
    sorted.times.reserve(order.size());
    sorted.marks.reserve(order.size());
    for (const std::size_t i : order) {
      sorted.times.push_back(with_mo.times[i]);
      sorted.marks.push_back(with_mo.marks[i]);
    }
    const PathGrid base = price_path(ambient, prop, dt, gp);
    const PathGrid meta = price_path(sorted, prop, dt, gp);
    diffs.row(p) = (meta.v - base.v).transpose();
  }

  MetaorderResult res;
  Eigen::ArrayXd mean = diffs.colwise().mean();
  Eigen::ArrayXd se(gp + 1);
  for (Eigen::Index i = 0; i <= gp; ++i) {
    const double m = mean[i];
    se[i] = std::sqrt((diffs.col(i) - m).square().sum() /
                      double(cfg.paths * std::max(1, cfg.paths - 1)));
  }
  // curve on normalized time t / duration
  res.curve = PathGrid(dt / cfg.duration, dt / cfg.duration, mean.tail(gp));
  res.peak = mean.maxCoeff();
  res.pair_a = abar;
  res.pair_tail_alpha = abar_tail;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  double max_se = 0.0;
  for (Eigen::Index i = 1; i <= gp; ++i) {
    const double tn = dt * double(i) / cfg.duration;
    if (tn < 0.1 || tn > 1.0) continue;
    max_se = std::max(max_se, se[i]);
    if (!(mean[i] > 0.0)) continue;
    const double x = std::log(tn);
    const double y = std::log(mean[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  res.max_se = max_se;
  if (res.peak > 0.0 && max_se > 0.2 * res.peak)
    throw std::runtime_error("metaorder: Monte Carlo error above 20% of the curve peak");
  res.fitted_exponent = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
                               : std::numeric_limits<double>::quiet_NaN();
  return res;
}

}  // namespace orderflow::impact
