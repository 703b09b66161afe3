#pragma once

#include <limits>
#include <string>
#include <vector>

#include "orderflow/grid.hpp"

namespace orderflow::estimators {

struct EstimateReport {
  enum class Method { fbm_qv, mixed_qv, volume_acf };
  Method method = Method::fbm_qv;
  double h_hat = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  bool boundary = false;     // volume_acf solution pinned at the H grid edge
  std::string reason;        // degeneracy trigger, empty otherwise
  std::vector<double> lags;  // per-scale statistics actually used
  std::vector<double> qvs;
  double sigma_w2 = std::numeric_limits<double>::quiet_NaN();
  double sigma_h2 = std::numeric_limits<double>::quiet_NaN();
};

const char* method_name(EstimateReport::Method m);

// mean squared increment at the given lag
double qv(const Eigen::ArrayXd& series, Eigen::Index lag);
double qv(const PathGrid& series, Eigen::Index lag);

// log-log regression of qv on lag, slope / 2
EstimateReport hurst_fbm(const Eigen::ArrayXd& series, const std::vector<Eigen::Index>& lags);

// three-scale quadratic-variation system at delta, 2 delta, 4 delta under
// q_k = sW^2 k d + sH^2 (k d)^{2H}; H = log2((q4-2q2)/(q2-2q1)) / 2
EstimateReport hurst_mixed(const Eigen::ArrayXd& series, Eigen::Index delta);

// the same closed form applied to externally computed moments
double hurst_mixed_from_qv(double q1, double q2, double q4);

struct DeseasonalizeResult {
  Eigen::ArrayXXd bins;                    // day x intraday-bin
  std::vector<Eigen::Index> zero_columns;  // untouched columns
};
// divide each intraday column by its across-day mean
DeseasonalizeResult deseasonalize(const Eigen::ArrayXXd& bins);

struct TruncateResult {
  Eigen::ArrayXd series;
  Eigen::Index clipped = 0;
};
// clip to [-c sd, +c sd], sd the sample standard deviation
TruncateResult truncate_outliers(const Eigen::ArrayXd& increments, double c = 3.0);

// fGn autocovariance gamma_H(k) = (|k+1|^{2H} + |k-1|^{2H} - 2|k|^{2H}) / 2
Eigen::ArrayXd fgn_autocovariance(double H, Eigen::Index max_lag);

// least-squares fit of empirical autocovariances (lags 0..max_lag) against
// sigma^2 * gamma_H over an H grid on (0.01, 0.49) at resolution 0.005
EstimateReport hurst_volume(const Eigen::ArrayXd& increments, Eigen::Index max_lag);

}  // namespace orderflow::estimators
