#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gint/error.hpp"
#include "gint/specfun.hpp"

namespace gint::specfun {
namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,        -3617.0 / 122400.0};

// B_{2k} / (2k), k = 1..8, for the digamma asymptotic series
constexpr std::array<double, 8> kDigamma = {
    1.0 / 12.0,   -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0,  -691.0 / 32760.0,  1.0 / 12.0,  -3617.0 / 8160.0};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

[[noreturn]] void throw_pole(const char* fn, double x) {
  std::ostringstream os;
  os.precision(17);
  os << fn << " has a pole at " << x;
  throw NumericError("specfun", ErrorCode::pole, os.str());
}

cplx stirling(cplx z) {
  const cplx zi = 1.0 / z;
  const cplx zi2 = zi * zi;
  cplx corr = 0.0;
  cplx p = zi;
  for (double c : kStirling) {
    corr += c * p;
    p *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr;
}

}  // namespace

double gamma(double x) {
  if (is_nonpositive_integer(x)) throw_pole("Gamma", x);
  const double g = std::tgamma(x);
  if (std::isinf(g))
    throw NumericError("specfun", ErrorCode::overflow, "Gamma overflows at this argument");
  return g;
}

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real())) throw_pole("log Gamma", z.real());
  cplx shift = 0.0;
  while (z.real() < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

cplx gamma(cplx z) {
  if (z.imag() == 0.0) return gamma(z.real());
  return std::exp(log_gamma(z));
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.0) return 0.0;  // underflows
  return 1.0 / std::tgamma(x);
}

cplx rgamma(cplx z) {
  if (z.imag() == 0.0) return rgamma(z.real());
  return std::exp(-log_gamma(z));
}

double log_abs_gamma(double x, int* sign) {
  if (is_nonpositive_integer(x)) throw_pole("log|Gamma|", x);
  if (sign) {
    if (x > 0.0)
      *sign = 1;
    else
      *sign = (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
  }
  return std::lgamma(x);
}

double log_abs_gamma_sq(double x, double y) {
  if (y == 0.0) return 2.0 * log_abs_gamma(x);
  // Shift x upward; |x + k + i y|^2 is real.
  double shift = 0.0;
  while (x < 10.0) {
    shift += std::log(x * x + y * y);
    x += 1.0;
  }
  // Real part of Stirling's series at z = x + i y.
  const double r = std::hypot(x, y);
  const double theta = std::atan2(y, x);
  double re = (x - 0.5) * std::log(r) - y * theta - x + 0.5 * std::log(2.0 * kPi);
  const cplx zi = 1.0 / cplx(x, y);
  const cplx zi2 = zi * zi;
  cplx p = zi;
  for (double c : kStirling) {
    re += c * p.real();
    p *= zi2;
  }
  return 2.0 * re - shift;
}

double digamma(double x) {
  if (is_nonpositive_integer(x)) throw_pole("digamma", x);
  if (x < 0.0) return digamma(1.0 - x) - kPi / std::tan(kPi * x);
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double xi2 = 1.0 / (x * x);
  double p = xi2, series = 0.0;
  for (double c : kDigamma) {
    series += c * p;
    p *= xi2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

cplx pochhammer(cplx z, int n) {
  if (n < 0)
    throw NumericError("specfun", ErrorCode::domain, "Pochhammer index must be non-negative");
  cplx p = 1.0;
  for (int k = 0; k < n; ++k) p *= z + static_cast<double>(k);
  return p;
}

cplx eval_gamma_family(GammaKind kind, cplx z, int n) {
  switch (kind) {
    case GammaKind::gamma:
      return gamma(z);
    case GammaKind::digamma:
      if (z.imag() != 0.0)
        throw NumericError("specfun", ErrorCode::unsupported, "digamma needs a real argument");
      return digamma(z.real());
    case GammaKind::pochhammer:
      return pochhammer(z, n);
  }
  throw NumericError("specfun", ErrorCode::domain, "unknown gamma-family kind");
}

}  // namespace gint::specfun
