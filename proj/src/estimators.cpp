#include "orderflow/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace orderflow::estimators {

const char* method_name(EstimateReport::Method m) {
  switch (m) {
    case EstimateReport::Method::fbm_qv: return "fbm_qv";
    case EstimateReport::Method::mixed_qv: return "mixed_qv";
    case EstimateReport::Method::volume_acf: return "volume_acf";
  }
  return "?";
}

double qv(const Eigen::ArrayXd& series, Eigen::Index lag) {
  if (lag < 1) throw std::invalid_argument("qv: lag must be >= 1");
  const Eigen::Index n = series.size();
  if (n <= lag) throw std::invalid_argument("qv: series shorter than lag");
  const auto d = series.tail(n - lag) - series.head(n - lag);
  return d.square().mean();
}

double qv(const PathGrid& series, Eigen::Index lag) { return qv(series.v, lag); }

EstimateReport hurst_fbm(const Eigen::ArrayXd& series, const std::vector<Eigen::Index>& lags) {
  if (lags.size() < 2) throw std::invalid_argument("hurst_fbm: need at least two lags");
  EstimateReport rep;
  rep.method = EstimateReport::Method::fbm_qv;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Eigen::Index lag : lags) {
    const double q = qv(series, lag);
    rep.lags.push_back(double(lag));
    rep.qvs.push_back(q);
    if (q <= 0.0) {
      rep.degenerate = true;
      rep.reason = "zero quadratic variation at lag " + std::to_string(lag);
      return rep;
    }
    const double x = std::log(double(lag));
    const double y = std::log(q);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = double(lags.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.h_hat = 0.5 * slope;
  return rep;
}

double hurst_mixed_from_qv(double q1, double q2, double q4) {
  const double num = q4 - 2.0 * q2;
  const double den = q2 - 2.0 * q1;
  if (!(den > 0.0) || !(num / den > 1.0)) return std::numeric_limits<double>::quiet_NaN();
  return 0.5 * std::log2(num / den);
}

EstimateReport hurst_mixed(const Eigen::ArrayXd& series, Eigen::Index delta) {
  if (delta < 1) throw std::invalid_argument("hurst_mixed: delta must be >= 1");
  if (series.size() < 16 * delta)
    throw std::invalid_argument("hurst_mixed: series must be at least 16 * delta long");
  EstimateReport rep;
  rep.method = EstimateReport::Method::mixed_qv;
  const double q1 = qv(series, delta);
  const double q2 = qv(series, 2 * delta);
  const double q4 = qv(series, 4 * delta);
  rep.lags = {double(delta), double(2 * delta), double(4 * delta)};
  rep.qvs = {q1, q2, q4};
  const double den = q2 - 2.0 * q1;
  if (!(den > 0.0)) {
    rep.degenerate = true;
    rep.reason = "q(2d) - 2 q(d) not positive: no detectable fractional component";
    return rep;
  }
  const double ratio = (q4 - 2.0 * q2) / den;
  if (!(ratio > 1.0)) {
    rep.degenerate = true;
    rep.reason = "scale ratio not above one: no detectable fractional component";
    return rep;
  }
  const double H = 0.5 * std::log2(ratio);
  rep.h_hat = H;
  const double d = double(delta);
  const double denom_h = std::pow(2.0 * d, 2.0 * H) - 2.0 * std::pow(d, 2.0 * H);
  rep.sigma_h2 = den / denom_h;
  rep.sigma_w2 = (q1 - rep.sigma_h2 * std::pow(d, 2.0 * H)) / d;
  return rep;
}

DeseasonalizeResult deseasonalize(const Eigen::ArrayXXd& bins) {
  if (bins.rows() < 5) throw std::invalid_argument("deseasonalize: need at least 5 days");
  if ((bins < 0.0).any()) throw std::invalid_argument("deseasonalize: bins must be nonnegative");
  DeseasonalizeResult out;
  out.bins = bins;
  for (Eigen::Index j = 0; j < bins.cols(); ++j) {
    const double mean = bins.col(j).mean();
    if (mean > 0.0)
      out.bins.col(j) /= mean;
    else
      out.zero_columns.push_back(j);
  }
  return out;
}

TruncateResult truncate_outliers(const Eigen::ArrayXd& increments, double c) {
  if (increments.size() == 0) throw std::invalid_argument("truncate_outliers: empty series");
  TruncateResult out;
  const double sd = std::sqrt((increments - increments.mean()).square().mean());
  const double bound = c * sd;
  out.series = increments.max(-bound).min(bound);
  out.clipped = (increments.abs() > bound).count();
  return out;
}

Eigen::ArrayXd fgn_autocovariance(double H, Eigen::Index max_lag) {
  Eigen::ArrayXd g(max_lag + 1);
  for (Eigen::Index k = 0; k <= max_lag; ++k) {
    const double kk = double(k);
    g[k] = 0.5 * (std::pow(std::abs(kk + 1.0), 2.0 * H) + std::pow(std::abs(kk - 1.0), 2.0 * H) -
                  2.0 * std::pow(kk, 2.0 * H));
  }
  return g;
}

EstimateReport hurst_volume(const Eigen::ArrayXd& increments, Eigen::Index max_lag) {
  if (max_lag < 4) throw std::invalid_argument("hurst_volume: max_lag must be >= 4");
  if (increments.size() < 4 * max_lag)
    throw std::invalid_argument("hurst_volume: series too short for the lag range");
  EstimateReport rep;
  rep.method = EstimateReport::Method::volume_acf;
  const Eigen::Index n = increments.size();
  const Eigen::ArrayXd x = increments - increments.mean();
  Eigen::ArrayXd emp(max_lag + 1);
  for (Eigen::Index k = 0; k <= max_lag; ++k)
    emp[k] = (x.head(n - k) * x.tail(n - k)).sum() / double(n);
  rep.lags.resize(max_lag + 1);
  rep.qvs.resize(max_lag + 1);
  for (Eigen::Index k = 0; k <= max_lag; ++k) {
    rep.lags[k] = double(k);
    rep.qvs[k] = emp[k];
  }
  if (!(emp[0] > 0.0)) {
    rep.degenerate = true;
    rep.reason = "zero lag-0 autocovariance";
    return rep;
  }
  double best_sse = std::numeric_limits<double>::infinity();
  double best_h = std::numeric_limits<double>::quiet_NaN();
  double best_s2 = std::numeric_limits<double>::quiet_NaN();
  Eigen::Index best_idx = -1;
  const double h_lo = 0.01, h_hi = 0.49, h_step = 0.005;
  const Eigen::Index n_h = Eigen::Index(std::round((h_hi - h_lo) / h_step)) + 1;
  for (Eigen::Index i = 0; i < n_h; ++i) {
    const double H = h_lo + h_step * double(i);
    const Eigen::ArrayXd gam = fgn_autocovariance(H, max_lag);
    const double s2 = (gam * emp).sum() / (gam * gam).sum();
    const double sse = (emp - s2 * gam).square().sum();
    if (sse < best_sse) {
      best_sse = sse;
      best_h = H;
      best_s2 = s2;
      best_idx = i;
    }
  }
  rep.h_hat = best_h;
  rep.sigma_w2 = best_s2;  // fitted variance scale
  rep.boundary = (best_idx == 0 || best_idx == n_h - 1);
  return rep;
}

}  // namespace orderflow::estimators
