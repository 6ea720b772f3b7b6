#include <gtest/gtest.h>

#include <cmath>

#include "gint/limits.hpp"

using namespace gint::limits;

TEST(FunctionLimit, RatiosApproachOne) {
  for (auto kind : {GegenbauerKind::S, GegenbauerKind::Z}) {
    EXPECT_LT(std::abs(function_limit_ratio(kind, 0.3, 100.0) - 1.0), 1e-2);
    EXPECT_LT(std::abs(function_limit_ratio(kind, -0.4, 100.0) - 1.0), 1e-2);
  }
}

TEST(FunctionLimit, FirstOrderRate) {
  for (auto kind : {GegenbauerKind::S, GegenbauerKind::Z}) {
    const auto r = rate_report([kind](double s) { return function_limit_ratio(kind, 0.3, s); });
    EXPECT_TRUE(r.monotone);
    EXPECT_NEAR(r.slope, -1.0, 0.15);
  }
}

// The diagonal integrals converge faster than the functions: the measured
// error falls like scale^-2.
TEST(IntegralLimit, RatiosApproachOne) {
  for (auto kind : {GegenbauerKind::S, GegenbauerKind::Z}) {
    const double q20 = std::abs(integral_limit_ratio(kind, 0.3, 20.0) - 1.0);
    const double q40 = std::abs(integral_limit_ratio(kind, 0.3, 40.0) - 1.0);
    EXPECT_LT(q20, 1e-3);
    EXPECT_NEAR(std::log2(q20 / q40), 2.0, 0.1);
  }
}

TEST(RateReport, ExactPowerLaw) {
  const auto r = rate_report([](double s) { return 1.0 + 3.0 / s; });
  EXPECT_NEAR(r.slope, -1.0, 1e-12);
  EXPECT_LT(r.half_width, 1e-10);
  EXPECT_TRUE(r.monotone);
}
