#include <doctest.h>

#include <cmath>

#include "orderflow/scaling.hpp"
#include "test_support.hpp"

using namespace orderflow;
using scaling::FiniteHorizonParams;
using scaling::LimitParams;

namespace {

// independent evaluation via long double, different code path
FiniteHorizonParams oracle_params(const LimitParams& lp, long double T) {
  const long double g = tgammal(1.0L - (long double)lp.alpha0);
  const long double oma = (long double)lp.lambda0 * lp.K0 * g / lp.alpha0 *
                          powl(T, -(long double)lp.alpha0);
  const long double nu = (long double)lp.mu0 * lp.alpha0 / ((long double)lp.K0 * g) *
                         powl(T, (long double)lp.alpha0 - 1.0L);
  const long double oma1 = (long double)lp.lambda1 * powl(T, -2.0L * (long double)lp.alpha0);
  return {double(T), double(nu), double(1.0L - oma), double(1.0L - oma1)};
}

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("limit parameter validation") {
  CHECK_THROWS_AS(LimitParams(0.2, 1, 1, 1, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(LimitParams(0.5, 1, 1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(LimitParams(0.375, -1, 1, 1, 0.375), std::invalid_argument);
  const LimitParams lp(0.375, 1, 1, 1, 0.375);
  CHECK(lp.alpha1() == doctest::Approx(0.75));
  CHECK(lp.H0() == doctest::Approx(0.75));
  CHECK(lp.H1() == doctest::Approx(0.25));
  // derived mu1 = mu0 a0^2/(l0 K0^2 G(1-a0)^2) = 1/G(0.625)^2 for the defaults
  const double g = std::tgamma(0.625);
  CHECK(lp.mu1() == doctest::Approx(1.0 / (g * g)).epsilon(1e-14));
}

TEST_CASE("user-supplied mu1 is cross-checked") {
  const LimitParams lp(0.375, 1, 1, 1, 0.375);
  CHECK_NOTHROW(LimitParams(0.375, 1, 1, 1, 0.375, lp.mu1()));
  CHECK_THROWS_AS(LimitParams(0.375, 1, 1, 1, 0.375, lp.mu1() * 1.001), std::invalid_argument);
}

TEST_CASE("finite horizon parameters against an independent evaluation") {
  const LimitParams lp(0.375, 1, 1, 1, 0.375);
  const auto fh = scaling::finite_horizon_params(lp, 1e4);
  const auto want = oracle_params(lp, 1e4L);
  CHECK(fh.nu_T == doctest::Approx(want.nu_T).epsilon(1e-13));
  CHECK(fh.a0_T == doctest::Approx(want.a0_T).epsilon(1e-13));
  CHECK(fh.a1_T == doctest::Approx(want.a1_T).epsilon(1e-13));
  CHECK(fh.a0_T > 0.0);
  CHECK(fh.a0_T < 1.0);
}

TEST_CASE("mu1 consistency identity holds at every horizon") {
  // T^{1-alpha1} nu / (1 - a0) equals the derived mu1 exactly under the scheme
  const LimitParams lp(0.41, 2.0, 0.7, 1.3, 0.41);
  for (const double T : {100.0, 1e3, 1e4, 1e6}) {
    const auto fh = scaling::finite_horizon_params(lp, T);
    const double val = std::pow(T, 1.0 - lp.alpha1()) * fh.nu_T / (1.0 - fh.a0_T);
    CHECK(val == doctest::Approx(lp.mu1()).epsilon(1e-12));
  }
}

TEST_CASE("masses increase to one with the horizon") {
  const LimitParams lp(0.375, 1, 1, 1, 0.375);
  double prev0 = 0.0, prev1 = 0.0;
  for (const double T : {1e2, 1e3, 1e4, 1e5, 1e6}) {
    const auto fh = scaling::finite_horizon_params(lp, T);
    CHECK(fh.a0_T > prev0);
    CHECK(fh.a1_T > prev1);
    prev0 = fh.a0_T;
    prev1 = fh.a1_T;
  }
}

TEST_CASE("horizon too small is rejected") {
  const LimitParams lp(0.375, 1, 1, 1, 0.375);
  CHECK_THROWS_AS(scaling::finite_horizon_params(lp, 1.5), std::invalid_argument);
}

TEST_CASE("rescale factors and algebra") {
  const LimitParams lp(0.375, 1, 1, 1, 0.375);
  const auto fh = scaling::finite_horizon_params(lp, 1e4);
  CHECK(fh.core_factor() == doctest::Approx((1 - fh.a0_T) / (fh.T * fh.nu_T)).epsilon(1e-15));
  // signed^2 = unsigned, unsigned = core * (1 - a1)
  CHECK(fh.signed_factor() * fh.signed_factor() ==
        doctest::Approx(fh.unsigned_factor()).epsilon(1e-15));
  CHECK(fh.unsigned_factor() ==
        doctest::Approx(fh.core_factor() * (1.0 - fh.a1_T)).epsilon(1e-15));

  PathGrid zero(0.0, 10.0, Eigen::ArrayXd::Zero(1001));
  CHECK((scaling::rescale_core(zero, fh).v == 0.0).all());
  CHECK((scaling::rescale_unsigned(zero, fh).v == 0.0).all());
  CHECK((scaling::rescale_signed(zero, fh).v == 0.0).all());

  PathGrid ones(0.0, 10.0, Eigen::ArrayXd::Ones(1001));
  const auto r = scaling::rescale_core(ones, fh);
  CHECK(r.dt == doctest::Approx(10.0 / fh.T));
  CHECK(r.v[0] == doctest::Approx(fh.core_factor()));
}

}  // TEST_SUITE
