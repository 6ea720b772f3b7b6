#pragma once

#include <functional>
#include <vector>

#include "gint/genquad.hpp"

namespace gint::limits {

using genquad::GegenbauerKind;

inline const std::vector<double> kDefaultLadder{10.0, 20.0, 40.0, 80.0, 160.0};
inline constexpr double kDefaultTheta = 0.3;

/// Prefactored S_{alpha, i beta}(-cos theta) (resp. Z_{alpha, lambda}(cosh theta))
/// divided by (theta scale)^{-alpha} K_alpha(scale theta).
double function_limit_ratio(GegenbauerKind kind, double alpha, double scale,
                            double theta = kDefaultTheta);

/// Prefactored diagonal generalized Gegenbauer integral divided by
/// gen int K_alpha(scale r)^2 2r dr.
double integral_limit_ratio(GegenbauerKind kind, double alpha, double scale);

struct RateReport {
  std::vector<double> scales;
  std::vector<double> ratios;
  double slope = 0.0;       // least-squares slope of log|ratio - 1| against log scale
  double half_width = 0.0;  // 95% confidence half-width of the slope
  bool monotone = false;    // |ratio - 1| strictly decreasing along the ladder
};

RateReport rate_report(const std::function<double(double)>& ratio,
                       const std::vector<double>& ladder = kDefaultLadder);

}  // namespace gint::limits
