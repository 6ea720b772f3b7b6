#include "gint/limits.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numbers>

#include "gint/closedforms.hpp"
#include "gint/error.hpp"
#include "gint/specfun.hpp"

namespace gint::limits {
namespace {

constexpr double kPi = std::numbers::pi;

void check_scale(double s) {
  if (!(s > 0.0)) throw NumericError("limits", ErrorCode::domain, "scale must be positive");
}

}  // namespace

double function_limit_ratio(GegenbauerKind kind, double alpha, double scale, double theta) {
  check_scale(scale);
  if (!(theta > 0.0) || theta > 0.5 * kPi)
    throw NumericError("limits", ErrorCode::domain, "theta must lie in (0, pi/2]");
  const double geo = (alpha + 0.5) * std::log(theta);
  double lhs;
  if (kind == GegenbauerKind::S) {
    const double s = std::sin(0.5 * theta);
    const double ls = std::log(kPi) - kPi * scale - alpha * std::numbers::ln2 +
                      (alpha + 0.5) * std::log(std::sin(theta)) - geo;
    lhs = specfun::gegenbauer_s_offset(alpha, {0.0, scale}, 2.0 * s * s, ls);
  } else {
    const double s = std::sinh(0.5 * theta);
    int sg = 1;
    const double lg = specfun::log_abs_gamma(0.5 - alpha + scale, &sg);
    const double ls = 0.5 * std::log(kPi) + lg - (scale + 0.5) * std::numbers::ln2 +
                      (alpha + 0.5) * std::log(std::sinh(theta)) - geo;
    lhs = sg * specfun::gegenbauer_z_offset(alpha, scale, 2.0 * s * s, ls);
  }
  const double x = scale * theta;
  const double rhs = std::pow(x, -alpha) * specfun::bessel_k(alpha, x);
  return lhs / rhs;
}

double integral_limit_ratio(GegenbauerKind kind, double alpha, double scale) {
  check_scale(scale);
  // Each factor of the square carries half of the prefactor.
  double ls;
  if (kind == GegenbauerKind::S) {
    ls = std::log(kPi) - kPi * scale + alpha * (std::log(scale) - std::numbers::ln2);
  } else {
    ls = 0.5 * std::log(kPi) + std::lgamma(0.5 + alpha + scale) -
         (scale + 0.5) * std::numbers::ln2 - alpha * std::log(scale);
  }
  const double lhs = genquad::gen_bilinear_gegenbauer(kind, alpha, scale, scale, ls).value;
  return lhs / closedforms::mac_square_closed(alpha, scale);
}

RateReport rate_report(const std::function<double(double)>& ratio,
                       const std::vector<double>& ladder) {
  if (ladder.size() < 3)
    throw NumericError("limits", ErrorCode::domain, "ladder needs at least three scales");
  RateReport r;
  r.scales = ladder;
  std::vector<double> xs, ys;
  for (double s : ladder) {
    const double q = ratio(s);
    if (!std::isfinite(q) || !(q > 0.0))
      throw NumericError("limits", ErrorCode::domain, "ratio is not finite and positive");
    r.ratios.push_back(q);
    xs.push_back(std::log(s));
    ys.push_back(std::log(std::abs(q - 1.0)));
  }
  r.monotone = true;
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (!(ys[i] < ys[i - 1]) || !(ladder[i] > ladder[i - 1])) r.monotone = false;

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  r.slope = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - my - r.slope * (xs[i] - mx);
    sse += e * e;
  }
  const boost::math::students_t dist(n - 2.0);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  r.half_width = t * std::sqrt(sse / (n - 2.0) / sxx);
  return r;
}

}  // namespace gint::limits
