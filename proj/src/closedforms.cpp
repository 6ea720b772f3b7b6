#include "gint/closedforms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gint/error.hpp"
#include "gint/specfun.hpp"

namespace gint::closedforms {
namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw NumericError("closedforms", code, msg);
}

bool is_integer(double x) { return x == std::round(x); }

void check_order(double alpha) {
  const double d = std::abs(alpha - std::round(alpha));
  if (d > 0.0 && d < kNearInteger) {
    std::ostringstream os;
    os << "alpha = " << alpha << " is within " << kNearInteger
       << " of an integer; use the integer (anomalous) value";
    fail(ErrorCode::ill_conditioned, os.str());
  }
}

void check_positive(double x, const char* name) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << name << " must be positive, got " << x;
    fail(ErrorCode::domain, os.str());
  }
}

double log_cosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

}  // namespace

// With t = ln(a/b), c^2 = ab: a^2 - b^2 = 2 c^2 sinh t, so every quotient
// below is a ratio of sinh's with no cancellation as a -> b.
double mac_bilinear_closed(double alpha, double a, double b) {
  check_positive(a, "a");
  check_positive(b, "b");
  if (a == b) fail(ErrorCode::redirect, "a = b: use mac_square_closed");
  check_order(alpha);
  const double t = std::log(a / b);
  const double c2 = a * b;
  if (!is_integer(alpha))
    return kPi * std::sinh(alpha * t) / (std::sin(kPi * alpha) * c2 * std::sinh(t));
  const int n = static_cast<int>(std::abs(alpha));
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double l = 0.5 * std::log(c2) - std::numbers::ln2;
  double v = sign * (2.0 * l * std::sinh(n * t) + t * std::cosh(n * t)) / (c2 * std::sinh(t));
  double s = 0.0;
  for (int k = 0; k < n; ++k)
    s += std::exp(t * (2.0 * k - n + 1)) * (specfun::digamma(1.0 + k) + specfun::digamma(n - k));
  v -= sign * s / c2;
  return v;
}

double mac_square_closed(double alpha, double b) {
  check_positive(b, "b");
  check_order(alpha);
  if (alpha == 0.0) return 1.0 / (b * b);
  if (!is_integer(alpha)) return kPi * alpha / (b * b * std::sin(kPi * alpha));
  const double n = std::abs(alpha);
  const double sign = static_cast<int>(n) % 2 == 0 ? 1.0 : -1.0;
  return sign / (b * b) *
         (n * std::log(b * b / 4.0) + 1.0 + 2.0 * n * (1.0 - specfun::digamma(1.0 + n)));
}

double geg_s_bilinear_closed(double alpha, double beta1, double beta2, double log_scale) {
  if (!(alpha > -1.0)) fail(ErrorCode::domain, "geg_s needs alpha > -1");
  if (is_integer(alpha)) fail(ErrorCode::domain, "geg_s needs non-integer alpha");
  check_order(alpha);
  if (beta1 == beta2) fail(ErrorCode::redirect, "beta1 = beta2: use limit_diagonal");
  const double sp = std::sin(kPi * alpha);
  const double t1 = std::exp(log_cosh(kPi * beta1) -
                             specfun::log_abs_gamma_sq(0.5 + alpha, beta2) + 2.0 * log_scale);
  const double t2 = std::exp(log_cosh(kPi * beta2) -
                             specfun::log_abs_gamma_sq(0.5 + alpha, beta1) + 2.0 * log_scale);
  return std::pow(2.0, 2.0 * alpha + 2.0) / ((beta1 - beta2) * (beta1 + beta2) * sp) * (t1 - t2);
}

double geg_z_bilinear_closed(double alpha, double l1, double l2, double log_scale) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) fail(ErrorCode::domain, "geg_z needs positive degrees");
  if (is_integer(alpha)) fail(ErrorCode::domain, "geg_z needs non-integer alpha");
  check_order(alpha);
  if (l1 == l2) fail(ErrorCode::redirect, "l1 = l2: use limit_diagonal");
  const double sp = std::sin(kPi * alpha);
  const double pre = (l1 + l2 + 1.0) * std::numbers::ln2 + 2.0 * log_scale;
  // 2^{l1+l2+1} / (Gamma(1/2-a+x) Gamma(1/2+a+y)) in log form
  auto term = [&](double x, double y) {
    const double g1 = 0.5 - alpha + x, g2 = 0.5 + alpha + y;
    if ((g1 <= 0.0 && is_integer(g1)) || (g2 <= 0.0 && is_integer(g2))) return 0.0;
    int s1 = 1, s2 = 1;
    const double lg = specfun::log_abs_gamma(g1, &s1) + specfun::log_abs_gamma(g2, &s2);
    return s1 * s2 * std::exp(pre - lg);
  };
  return (term(l1, l2) - term(l2, l1)) / ((l1 - l2) * (l1 + l2) * sp);
}

double evaluate(Formula f, const FormulaParams& p) {
  switch (f) {
    case Formula::mac_bilinear: return mac_bilinear_closed(p.alpha, p.p1, p.p2);
    case Formula::mac_square: return mac_square_closed(p.alpha, p.p2);
    case Formula::geg_s: return geg_s_bilinear_closed(p.alpha, p.p1, p.p2);
    case Formula::geg_z: return geg_z_bilinear_closed(p.alpha, p.p1, p.p2);
  }
  fail(ErrorCode::domain, "unknown formula");
}

extrap::Estimate limit_diagonal(Formula f, const FormulaParams& p, LimitVariable v,
                                const LimitOptions& opts) {
  std::function<double(double)> g;
  double x0;
  if (v == LimitVariable::spectral) {
    if (f == Formula::mac_square) fail(ErrorCode::domain, "mac_square has no spectral limit");
    x0 = p.p1;
    g = [f, p](double x) { return evaluate(f, {p.alpha, p.p1, x}); };
  } else {
    x0 = p.alpha;
    g = [f, p](double a) { return evaluate(f, {a, p.p1, p.p2}); };
  }
  const double h0 = opts.first_step * std::max(1.0, std::abs(x0));
  extrap::Estimate e = extrap::limit_at_point(g, x0, h0, true, opts.terms);
  if (!std::isfinite(e.value)) fail(ErrorCode::convergence, "diagonal limit is not finite");
  return e;
}

}  // namespace gint::closedforms
