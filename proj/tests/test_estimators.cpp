#include <doctest.h>

#include <cmath>

#include "orderflow/estimators.hpp"
#include "orderflow/limits.hpp"
#include "orderflow/rng.hpp"
#include "test_support.hpp"

using namespace orderflow;
using estimators::EstimateReport;
using test_support::mean_se;

TEST_SUITE("estimators") {

TEST_CASE("qv basics") {
  Eigen::ArrayXd lin(100);
  for (int i = 0; i < 100; ++i) lin[i] = 0.3 * i;
  CHECK(estimators::qv(lin, 5) == doctest::Approx(std::pow(0.3 * 5, 2)).epsilon(1e-14));
  CHECK(estimators::qv(Eigen::ArrayXd::Constant(50, 2.0), 3) == 0.0);
  CHECK_THROWS_AS(estimators::qv(lin, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimators::qv(lin, 100), std::invalid_argument);

  Rng rng(3);
  const double v = 0.7;
  Eigen::ArrayXd walk(1 << 16);
  walk[0] = 0.0;
  for (int i = 1; i < (1 << 16); ++i) walk[i] = walk[i - 1] + std::sqrt(v) * rng.normal();
  for (const Eigen::Index lag : {1, 4, 16})
    CHECK(estimators::qv(walk, lag) == doctest::Approx(v * double(lag)).epsilon(0.02));
}

TEST_CASE("fbm estimator on exact paths") {
  std::vector<double> est_fbm, est_walk;
  for (int p = 0; p < 100; ++p) {
    const auto path = limits::simulate_fbm(0.75, 1 << 16, 1.0 / (1 << 16), 100 + p);
    est_fbm.push_back(estimators::hurst_fbm(path.v, {1, 2, 4, 8}).h_hat);
    const auto walk = limits::simulate_mixed_fbm({0.75, 1.0, 0.0}, 1 << 16, 1.0 / (1 << 16),
                                                 300 + p);
    est_walk.push_back(estimators::hurst_fbm(walk.v, {1, 2, 4, 8}).h_hat);
  }
  CHECK(std::abs(mean_se(est_fbm).mean - 0.75) < 0.03);
  CHECK(std::abs(mean_se(est_walk).mean - 0.5) < 0.03);
}

TEST_CASE("fbm estimator drifts upward with scale on mixed input") {
  // quadratic variations switch from the martingale to the fractional part
  const double dt = 1.0 / 64.0;
  std::vector<double> means(4, 0.0);
  const int paths = 20;
  for (int p = 0; p < paths; ++p) {
    const auto path = limits::simulate_mixed_fbm({0.775, 1.0, 1.0}, 1 << 16, dt, 500 + p);
    int j = 0;
    for (const Eigen::Index base : {8, 16, 32, 64})
      means[j++] += estimators::hurst_fbm(path.v, {base, 2 * base, 4 * base}).h_hat;
  }
  for (auto& m : means) m /= paths;
  CHECK(means[0] < means[1]);
  CHECK(means[1] < means[2]);
  CHECK(means[2] < means[3]);
  CHECK(means[0] > 0.45);
  CHECK(means[0] < 0.65);
}

TEST_CASE("degenerate fbm estimator input") {
  const auto rep = estimators::hurst_fbm(Eigen::ArrayXd::Constant(1000, 1.0), {1, 2, 4});
  CHECK(rep.degenerate);
  CHECK(!rep.reason.empty());
  CHECK(std::isnan(rep.h_hat));
}

TEST_CASE("mixed estimator identity on noiseless moments") {
  // q_k = a k d + b (k d)^{2H} must return H exactly
  for (int ia = 0; ia < 10; ++ia) {
    for (int ib = 1; ib <= 10; ++ib) {
      for (int ih = 0; ih < 9; ++ih) {
        const double a = 0.5 * ia;
        const double b = 0.3 * ib;
        const double H = 0.55 + 0.05 * ih;
        const double d = 16.0;
        auto q = [&](double k) { return a * k * d + b * std::pow(k * d, 2.0 * H); };
        const double got = estimators::hurst_mixed_from_qv(q(1), q(2), q(4));
        CHECK(got == doctest::Approx(H).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("mixed estimator on exact mixed paths") {
  std::vector<double> est;
  int degenerate = 0;
  for (int p = 0; p < 60; ++p) {
    const auto path = limits::simulate_mixed_fbm({0.75, 1.0, 1.0}, 1 << 16, 1.0 / 64.0, 700 + p);
    const auto rep = estimators::hurst_mixed(path.v, 16);
    if (rep.degenerate)
      ++degenerate;
    else
      est.push_back(rep.h_hat);
  }
  CHECK(degenerate < 6);
  CHECK(std::abs(mean_se(est).mean - 0.75) < 0.05);
}

TEST_CASE("mixed estimator degenerates on a pure random walk") {
  int degenerate = 0;
  for (int p = 0; p < 40; ++p) {
    const auto walk = limits::simulate_mixed_fbm({0.75, 1.0, 0.0}, 1 << 14, 1.0, 900 + p);
    if (estimators::hurst_mixed(walk.v, 16).degenerate) ++degenerate;
  }
  CHECK(degenerate > 20);  // no fractional component to detect
}

TEST_CASE("mixed estimator is stable across scales where fbm is not") {
  const double dt = 1.0 / 64.0;
  std::vector<double> mixed_means, fbm_means;
  for (const Eigen::Index d : {8, 16, 32, 64}) {
    std::vector<double> m, f;
    for (int p = 0; p < 40; ++p) {
      const auto path = limits::simulate_mixed_fbm({0.775, 1.0, 1.0}, 1 << 16, dt, 40 + p);
      const auto rep = estimators::hurst_mixed(path.v, d);
      if (!rep.degenerate) m.push_back(rep.h_hat);
      f.push_back(estimators::hurst_fbm(path.v, {d, 2 * d, 4 * d}).h_hat);
    }
    mixed_means.push_back(mean_se(m).mean);
    fbm_means.push_back(mean_se(f).mean);
  }
  const auto [m_lo, m_hi] = std::minmax_element(mixed_means.begin(), mixed_means.end());
  const auto [f_lo, f_hi] = std::minmax_element(fbm_means.begin(), fbm_means.end());
  CHECK(*m_hi - *m_lo < 0.05);
  CHECK(*f_hi - *f_lo > 0.10);
}

TEST_CASE("scale invariance of the Hurst estimators") {
  const auto path = limits::simulate_mixed_fbm({0.75, 1.0, 1.0}, 1 << 14, 1.0 / 64.0, 77);
  const Eigen::ArrayXd scaled = 7.3 * path.v;
  const auto a = estimators::hurst_mixed(path.v, 16);
  const auto b = estimators::hurst_mixed(scaled, 16);
  CHECK(a.h_hat == doctest::Approx(b.h_hat).epsilon(1e-12));
  CHECK(estimators::hurst_fbm(path.v, {4, 8, 16}).h_hat ==
        doctest::Approx(estimators::hurst_fbm(scaled, {4, 8, 16}).h_hat).epsilon(1e-12));

  Rng rng(5);
  Eigen::ArrayXd noise(1 << 12);
  for (auto& x : noise) x = rng.normal();
  const auto v1 = estimators::hurst_volume(noise, 20);
  const auto v2 = estimators::hurst_volume(Eigen::ArrayXd(4.2 * noise), 20);
  CHECK(v1.h_hat == v2.h_hat);
}

TEST_CASE("deseasonalize") {
  SUBCASE("identical days become ones") {
    Eigen::ArrayXXd bins(6, 4);
    for (int d = 0; d < 6; ++d)
      for (int b = 0; b < 4; ++b) bins(d, b) = 1.0 + b;
    const auto r = estimators::deseasonalize(bins);
    CHECK((r.bins == 1.0).all());
    CHECK(r.zero_columns.empty());
  }
  SUBCASE("doubling one day scales its row through the new profile") {
    Eigen::ArrayXXd bins(5, 3);
    Rng rng(9);
    for (int d = 0; d < 5; ++d)
      for (int b = 0; b < 3; ++b) bins(d, b) = 1.0 + rng.uniform();
    const auto base = estimators::deseasonalize(bins);
    Eigen::ArrayXXd doubled = bins;
    doubled.row(2) *= 2.0;
    const auto mod = estimators::deseasonalize(doubled);
    for (int b = 0; b < 3; ++b) {
      const double profile_ratio = bins.col(b).mean() / doubled.col(b).mean();
      CHECK(mod.bins(2, b) == doctest::Approx(2.0 * base.bins(2, b) * profile_ratio));
      CHECK(mod.bins(0, b) == doctest::Approx(base.bins(0, b) * profile_ratio));
    }
  }
  SUBCASE("U-shaped profile times noise has unit column means") {
    Rng rng(11);
    Eigen::ArrayXXd bins(40, 10);
    for (int d = 0; d < 40; ++d)
      for (int b = 0; b < 10; ++b) {
        const double u_shape = 1.0 + std::pow((b - 4.5) / 4.5, 2.0);
        bins(d, b) = u_shape * (0.5 + rng.uniform());
      }
    const auto r = estimators::deseasonalize(bins);
    for (int b = 0; b < 10; ++b) CHECK(r.bins.col(b).mean() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("idempotence") {
    Rng rng(13);
    Eigen::ArrayXXd bins(8, 5);
    for (int d = 0; d < 8; ++d)
      for (int b = 0; b < 5; ++b) bins(d, b) = rng.uniform() * (1.0 + b);
    const auto once = estimators::deseasonalize(bins);
    const auto twice = estimators::deseasonalize(once.bins);
    CHECK(((once.bins - twice.bins).abs() < 1e-12).all());
  }
  SUBCASE("zero column flagged, shape errors thrown") {
    Eigen::ArrayXXd bins = Eigen::ArrayXXd::Ones(5, 3);
    bins.col(1).setZero();
    const auto r = estimators::deseasonalize(bins);
    CHECK(r.zero_columns == std::vector<Eigen::Index>{1});
    CHECK((r.bins.col(1) == 0.0).all());
    CHECK_THROWS_AS(estimators::deseasonalize(Eigen::ArrayXXd::Ones(3, 4)),
                    std::invalid_argument);
    Eigen::ArrayXXd neg = Eigen::ArrayXXd::Ones(6, 2);
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(estimators::deseasonalize(neg), std::invalid_argument);
  }
}

TEST_CASE("truncate outliers") {
  SUBCASE("all zeros unchanged") {
    const auto r = estimators::truncate_outliers(Eigen::ArrayXd::Zero(100));
    CHECK((r.series == 0.0).all());
    CHECK(r.clipped == 0);
  }
  SUBCASE("single spike clipped") {
    Rng rng(17);
    Eigen::ArrayXd x(1000);
    for (auto& v : x) v = rng.normal();
    x[500] = 100.0;
    const auto r = estimators::truncate_outliers(x);
    CHECK(r.clipped >= 1);
    CHECK(r.series[500] < 100.0);
    CHECK(r.series[499] == x[499]);
  }
  SUBCASE("standard normal clip fraction near 2 Phi(-3)") {
    Rng rng(19);
    Eigen::ArrayXd x(100000);
    for (auto& v : x) v = rng.normal();
    const auto r = estimators::truncate_outliers(x);
    const double frac = double(r.clipped) / double(x.size());
    CHECK(std::abs(frac - 0.0027) < 0.001);
  }
}

TEST_CASE("volume estimator on exact fractional Gaussian noise") {
  std::vector<double> est;
  for (int p = 0; p < 100; ++p) {
    const auto path = limits::simulate_fbm(0.25, 1 << 16, 1.0, 1200 + p);
    const Eigen::Index n = path.size() - 1;
    const Eigen::ArrayXd inc = path.v.tail(n) - path.v.head(n);
    est.push_back(estimators::hurst_volume(inc, 20).h_hat);
  }
  CHECK(std::abs(mean_se(est).mean - 0.25) < 0.04);
}

TEST_CASE("volume estimator flags white noise as a boundary solution") {
  Rng rng(23);
  Eigen::ArrayXd x(1 << 14);
  for (auto& v : x) v = rng.normal();
  const auto rep = estimators::hurst_volume(x, 20);
  CHECK(rep.boundary);
  CHECK(rep.h_hat > 0.45);
}

TEST_CASE("volume estimator degenerate input") {
  const auto rep = estimators::hurst_volume(Eigen::ArrayXd::Zero(1000), 10);
  CHECK(rep.degenerate);
  CHECK_THROWS_AS(estimators::hurst_volume(Eigen::ArrayXd::Zero(10), 2), std::invalid_argument);
}

}  // TEST_SUITE
