#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "gint/error.hpp"
#include "gint/specfun.hpp"

namespace gint::specfun {
namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void domain_error(const std::string& msg) {
  throw NumericError("specfun", ErrorCode::domain, msg);
}

double dist_to_integer(double x) { return std::abs(x - std::round(x)); }

bool is_imaginary(cplx z) { return z.real() == 0.0 && z.imag() != 0.0; }

// Argument with its distances to the singular points carried separately, so
// that w - 1 and w + 1 keep full relative accuracy near +-1.
struct Pt {
  double w, wm1, wp1;
};

Pt from_w(double w) { return {w, w - 1.0, w + 1.0}; }

struct Partial {
  double value = 0.0;
  double abs_sum = 0.0;
  long terms = 0;
};

Partial to_real(const detail::SeriesSum& s) {
  const double scale = std::max(s.abs_sum, std::abs(s.value));
  if (std::abs(s.value.imag()) > 1e-12 * scale) {
    throw NumericError("specfun", ErrorCode::unsupported,
                       "Gegenbauer series has a non-negligible imaginary part; only real or "
                       "purely imaginary degrees are supported");
  }
  return {s.value.real(), s.abs_sum, s.terms};
}

GegenbauerResult make_result(double value, double abs_sum, long terms, Route route) {
  GegenbauerResult r;
  r.value = value;
  r.route = route;
  r.terms = terms;
  if (value != 0.0)
    r.condition = std::max(1.0, abs_sum / std::abs(value));
  else
    r.condition = abs_sum == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return r;
}

// log|c| and sign(c) of a real coefficient given as a product of factors.
struct LogCoef {
  double log_abs = 0.0;
  int sign = 1;
  bool zero = false;
};

LogCoef log_rgamma(double x) {
  LogCoef c;
  if (x <= 0.0 && x == std::floor(x)) {
    c.zero = true;
    return c;
  }
  int sg = 1;
  c.log_abs = -log_abs_gamma(x, &sg);
  c.sign = sg;
  return c;
}

double log_cosh(double t) {
  t = std::abs(t);
  return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

// Symmetric order stencil (4 m(h) - m(2h)) / 3 with m(h) = (F(a+h) + F(a-h)) / 2.
GegenbauerResult order_stencil(const std::function<GegenbauerResult(double)>& f, double alpha) {
  constexpr double h = 1.5e-3;
  const GegenbauerResult p1 = f(alpha + h), m1 = f(alpha - h);
  const GegenbauerResult p2 = f(alpha + 2 * h), m2 = f(alpha - 2 * h);
  const double m_h = 0.5 * (p1.value + m1.value);
  const double m_2h = 0.5 * (p2.value + m2.value);
  GegenbauerResult r;
  r.value = (4.0 * m_h - m_2h) / 3.0;
  r.route = p1.route;
  r.terms = p1.terms + m1.terms + p2.terms + m2.terms;
  const double worst = std::max({p1.condition, m1.condition, p2.condition, m2.condition});
  // The stencil itself amplifies rounding by roughly 1/h.
  const double scale = std::max({std::abs(p1.value), std::abs(m1.value), std::abs(p2.value),
                                 std::abs(m2.value)});
  r.condition = r.value != 0.0 ? worst * std::max(1.0, scale / std::abs(r.value)) * 2.0
                               : std::numeric_limits<double>::infinity();
  return r;
}

// ---------------------------------------------------------------- S routes

GegenbauerResult s_series(double alpha, cplx lambda, Pt w, double log_scale,
                          const GegenbauerConfig& cfg) {
  const double x = -0.5 * w.wm1;
  const Partial p = to_real(detail::hypergeometric_series(0.5 + alpha + lambda,
                                                          0.5 + alpha - lambda, alpha + 1.0, x,
                                                          true, log_scale, cfg.series_tol,
                                                          cfg.max_terms));
  return make_result(p.value, p.abs_sum, p.terms, Route::series);
}

// Gauss connection around w = -1:
//   S_{a,l}(w) = -cos(pi l)/sin(pi a) S_{a,l}(-w)
//              + ((1+w)/2)^{-a} pi/(sin(pi a) Gamma(1/2+a+l) Gamma(1/2+a-l))
//                F~(1/2-l, 1/2+l; 1-a; (1+w)/2)
GegenbauerResult s_connection(double alpha, cplx lambda, Pt w, double log_scale,
                              const GegenbauerConfig& cfg) {
  if (alpha == std::round(alpha))
    throw NumericError("specfun", ErrorCode::ill_conditioned,
                       "connection formula is singular at integer order");
  if (lambda.imag() != 0.0 && lambda.real() != 0.0)
    throw NumericError("specfun", ErrorCode::unsupported,
                       "connection route needs a real or purely imaginary degree");
  const double y = 0.5 * w.wp1;
  const double sin_pa = std::sin(kPi * alpha);
  const int sin_sign = sin_pa > 0 ? 1 : -1;
  const double log_sin = std::log(std::abs(sin_pa));

  LogCoef c1, c2;
  if (is_imaginary(lambda)) {
    const double beta = lambda.imag();
    c1.log_abs = log_cosh(kPi * beta) - log_sin;
    c1.sign = -sin_sign;
    c2.log_abs = std::log(kPi) - log_sin - log_abs_gamma_sq(0.5 + alpha, beta);
    c2.sign = sin_sign;
  } else {
    const double l = lambda.real();
    const double cos_pl = std::cos(kPi * l);
    if (cos_pl == 0.0) {
      c1.zero = true;
    } else {
      c1.log_abs = std::log(std::abs(cos_pl)) - log_sin;
      c1.sign = -(cos_pl > 0 ? 1 : -1) * sin_sign;
    }
    const LogCoef ga = log_rgamma(0.5 + alpha + l), gb = log_rgamma(0.5 + alpha - l);
    if (ga.zero || gb.zero) {
      c2.zero = true;
    } else {
      c2.log_abs = std::log(kPi) - log_sin + ga.log_abs + gb.log_abs;
      c2.sign = sin_sign * ga.sign * gb.sign;
    }
  }

  Partial t1, t2;
  if (!c1.zero) {
    t1 = to_real(detail::hypergeometric_series(0.5 + alpha + lambda, 0.5 + alpha - lambda,
                                               alpha + 1.0, y, true, log_scale + c1.log_abs,
                                               cfg.series_tol, cfg.max_terms));
    t1.value *= c1.sign;
  }
  if (!c2.zero) {
    t2 = to_real(detail::hypergeometric_series(
        0.5 - lambda, 0.5 + lambda, 1.0 - alpha, y, true,
        log_scale + c2.log_abs - alpha * std::log(y), cfg.series_tol, cfg.max_terms));
    t2.value *= c2.sign;
  }
  const double value = t1.value + t2.value;
  return make_result(value, t1.abs_sum + t2.abs_sum, t1.terms + t2.terms, Route::connection);
}

// ---------------------------------------------------------------- Z routes

GegenbauerResult z_series(double alpha, double lambda, Pt w, double log_scale,
                          const GegenbauerConfig& cfg) {
  const double z = 2.0 / w.wp1;
  const double log_pref =
      log_scale - (0.5 + alpha + lambda) * std::log(w.wp1) - log_abs_gamma(lambda + 1.0);
  int sg = 1;
  log_abs_gamma(lambda + 1.0, &sg);
  const Partial p = to_real(detail::hypergeometric_series(
      0.5 + lambda, 0.5 + lambda + alpha, 1.0 + 2.0 * lambda, z, false, log_pref,
      cfg.series_tol, cfg.max_terms));
  return make_result(sg * p.value, p.abs_sum, p.terms, Route::series);
}

double log_w2m1(Pt w) { return std::log(w.wm1) + std::log(w.wp1); }

GegenbauerResult z_whipple(double alpha, double lambda, Pt w, double log_scale,
                           const GegenbauerConfig& cfg) {
  const double lw = log_w2m1(w);
  const double v = w.w / std::sqrt(w.wm1 * w.wp1);
  if (!(v < 3.0))
    throw NumericError("specfun", ErrorCode::domain,
                       "Whipple route needs w/sqrt(w^2-1) < 3 (w > 1.0607)");
  const double x = 0.5 * (1.0 - v);
  const double shift = (-0.25 - 0.5 * alpha - 0.5 * lambda) * lw;
  const Partial p = to_real(detail::hypergeometric_series(
      cplx(0.5 + lambda + alpha), cplx(0.5 + lambda - alpha), lambda + 1.0, x, true,
      log_scale + shift, cfg.series_tol, cfg.max_terms));
  return make_result(p.value, p.abs_sum, p.terms, Route::whipple);
}

// Gauss connection around w = 1, y = (w-1)/(w+1):
//   Z = (w+1)^{-1/2-a-l} 2^{2l} sqrt(pi) / sin(pi a)
//       [ y^{-a} F~(1/2+l, 1/2+l-a; 1-a; y) / Gamma(1/2+l+a)
//         - F~(1/2+l, 1/2+l+a; 1+a; y) / Gamma(1/2+l-a) ]
GegenbauerResult z_connection(double alpha, double lambda, Pt w, double log_scale,
                              const GegenbauerConfig& cfg) {
  if (alpha == std::round(alpha))
    throw NumericError("specfun", ErrorCode::ill_conditioned,
                       "connection formula is singular at integer order");
  const double y = w.wm1 / w.wp1;
  const double sin_pa = std::sin(kPi * alpha);
  const int s0 = sin_pa > 0 ? 1 : -1;
  const double base = log_scale - (0.5 + alpha + lambda) * std::log(w.wp1) +
                      2.0 * lambda * std::numbers::ln2 + 0.5 * std::log(kPi) -
                      std::log(std::abs(sin_pa));
  const LogCoef g1 = log_rgamma(0.5 + lambda + alpha);
  const LogCoef g2 = log_rgamma(0.5 + lambda - alpha);
  Partial t1, t2;
  if (!g1.zero) {
    t1 = to_real(detail::hypergeometric_series(
        cplx(0.5 + lambda), cplx(0.5 + lambda - alpha), 1.0 - alpha, y, true,
        base + g1.log_abs - alpha * std::log(y), cfg.series_tol, cfg.max_terms));
    t1.value *= s0 * g1.sign;
  }
  if (!g2.zero) {
    t2 = to_real(detail::hypergeometric_series(cplx(0.5 + lambda), cplx(0.5 + lambda + alpha),
                                               1.0 + alpha, y, true, base + g2.log_abs,
                                               cfg.series_tol, cfg.max_terms));
    t2.value *= -s0 * g2.sign;
  }
  const double value = t1.value + t2.value;
  const double abs_sum = t1.abs_sum + t2.abs_sum;
  return make_result(value, abs_sum, t1.terms + t2.terms, Route::connection);
}

}  // namespace

std::string_view to_string(Route r) {
  switch (r) {
    case Route::automatic: return "automatic";
    case Route::series: return "series";
    case Route::whipple: return "whipple";
    case Route::connection: return "connection";
  }
  return "unknown";
}

namespace detail {

SeriesSum hypergeometric_series(cplx a, cplx b, double c, double z, bool regularized,
                                double log_scale, double tol, long max_terms) {
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream os;
    os << "hypergeometric series needs |z| < 1, got " << z;
    throw NumericError("specfun", ErrorCode::domain, os.str());
  }
  const bool both_real = a.imag() == 0.0 && b.imag() == 0.0;
  const bool conj_pair = !both_real && a == std::conj(b);

  long j0 = 0;
  cplx t;
  const bool c_pole = c <= 0.0 && c == std::floor(c);
  if (regularized && c_pole) {
    j0 = static_cast<long>(-c) + 1;
    t = pochhammer(a, static_cast<int>(j0)) * pochhammer(b, static_cast<int>(j0)) *
        std::exp(log_scale - std::lgamma(static_cast<double>(j0) + 1.0)) *
        std::pow(z, static_cast<double>(j0));
  } else if (regularized) {
    int sg = 1;
    const double lg = log_abs_gamma(c, &sg);
    t = sg * std::exp(log_scale - lg);
  } else {
    if (c_pole)
      throw NumericError("specfun", ErrorCode::pole,
                         "hypergeometric series with non-positive integer c");
    t = std::exp(log_scale);
  }

  SeriesSum s;
  s.value = 0.0;
  const double az = std::abs(z);
  for (long j = j0;; ++j) {
    s.value += t;
    s.abs_sum += std::abs(t);
    ++s.terms;
    const double jd = static_cast<double>(j);
    const double den = (c + jd) * (jd + 1.0);
    cplx ratio;
    if (both_real) {
      ratio = (a.real() + jd) * (b.real() + jd) / den * z;
    } else if (conj_pair) {
      ratio = std::norm(a + jd) / den * z;
    } else {
      ratio = (a + jd) * (b + jd) / den * z;
    }
    const cplx next = t * ratio;
    const double r = std::abs(ratio);
    if (next == 0.0 && (ratio == 0.0 || t == 0.0)) {
      if (ratio == 0.0) break;  // terminating series
    }
    if (r < 1.0) {
      const double rb = std::max(r, az);
      const double tail = std::abs(next) / (1.0 - rb);
      const double ref = std::max(std::abs(s.value), 1e-300);
      if (tail <= tol * ref) break;
    }
    if (s.terms > max_terms) {
      std::ostringstream os;
      os << "hypergeometric series did not converge within " << max_terms << " terms (z = " << z
         << ")";
      throw NumericError("specfun", ErrorCode::precision, os.str());
    }
    t = next;
  }
  if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag()))
    throw NumericError("specfun", ErrorCode::overflow, "hypergeometric series overflowed");
  return s;
}

}  // namespace detail

namespace {

GegenbauerResult s_eval(double alpha, cplx lambda, Pt w, double log_scale, Route route,
                        const GegenbauerConfig& cfg) {
  if (!(w.wp1 > 0.0 && w.wm1 < 2.0)) {
    std::ostringstream os;
    os << "S needs w in (-1, 3), got " << w.w;
    domain_error(os.str());
  }
  const bool near_int = dist_to_integer(alpha) < cfg.near_integer;
  auto connection = [&](double a) { return s_connection(a, lambda, w, log_scale, cfg); };
  auto connection_routed = [&]() {
    return near_int ? order_stencil(connection, alpha) : connection(alpha);
  };
  switch (route) {
    case Route::series:
      return s_series(alpha, lambda, w, log_scale, cfg);
    case Route::connection:
      return connection_routed();
    case Route::whipple:
      throw NumericError("specfun", ErrorCode::unsupported, "S has no Whipple route here");
    case Route::automatic:
      break;
  }
  const double x = -0.5 * w.wm1;
  const double est_terms = 50.0 / (0.5 * w.wp1) + std::abs(lambda);
  if (x <= 0.5 || est_terms <= cfg.cheap_terms) return s_series(alpha, lambda, w, log_scale, cfg);
  if (lambda.imag() == 0.0 || lambda.real() == 0.0) {
    const GegenbauerResult r = connection_routed();
    if (r.condition <= cfg.max_condition) return r;
  }
  return s_series(alpha, lambda, w, log_scale, cfg);
}

double s_derivative_factor(double alpha, cplx lambda) {
  const cplx factor = -0.5 * ((0.5 + alpha) * (0.5 + alpha) - lambda * lambda);
  if (std::abs(factor.imag()) > 1e-14 * std::abs(factor))
    throw NumericError("specfun", ErrorCode::unsupported, "complex derivative factor");
  return factor.real();
}

GegenbauerResult z_eval(double alpha, double lambda, Pt w, double log_scale, Route route,
                        const GegenbauerConfig& cfg) {
  if (!(w.wm1 > 0.0) || !std::isfinite(w.w)) {
    std::ostringstream os;
    os << "Z needs w > 1, got " << w.w;
    domain_error(os.str());
  }
  if (lambda + 1.0 <= 0.0 && lambda + 1.0 == std::floor(lambda + 1.0))
    throw NumericError("specfun", ErrorCode::pole, "Gamma(lambda + 1) has a pole");
  const bool near_int = dist_to_integer(alpha) < cfg.near_integer;
  auto connection = [&](double a) { return z_connection(a, lambda, w, log_scale, cfg); };
  auto connection_routed = [&]() {
    return near_int ? order_stencil(connection, alpha) : connection(alpha);
  };
  switch (route) {
    case Route::series:
      return z_series(alpha, lambda, w, log_scale, cfg);
    case Route::whipple:
      return z_whipple(alpha, lambda, w, log_scale, cfg);
    case Route::connection:
      return connection_routed();
    case Route::automatic:
      break;
  }
  if (w.w >= cfg.whipple_crossover) return z_series(alpha, lambda, w, log_scale, cfg);
  const double v = w.w / std::sqrt(w.wm1 * w.wp1);
  if (v < 2.9) {
    const GegenbauerResult r = z_whipple(alpha, lambda, w, log_scale, cfg);
    if (r.condition <= cfg.max_condition) return r;
  }
  const double est_terms = 50.0 * w.wp1 / w.wm1 + lambda;
  if (est_terms <= cfg.cheap_terms) return z_series(alpha, lambda, w, log_scale, cfg);
  const GegenbauerResult r = connection_routed();
  if (r.condition <= cfg.max_condition) return r;
  return z_series(alpha, lambda, w, log_scale, cfg);
}

}  // namespace

GegenbauerResult gegenbauer_s_eval(double alpha, cplx lambda, double w, double log_scale,
                                   Route route, const GegenbauerConfig& cfg) {
  return s_eval(alpha, lambda, from_w(w), log_scale, route, cfg);
}

double gegenbauer_s(double alpha, cplx lambda, double w, double log_scale) {
  return s_eval(alpha, lambda, from_w(w), log_scale, Route::automatic, {}).value;
}

double gegenbauer_s_derivative(double alpha, cplx lambda, double w, double log_scale) {
  return s_derivative_factor(alpha, lambda) * gegenbauer_s(alpha + 1.0, lambda, w, log_scale);
}

double gegenbauer_s_offset(double alpha, cplx lambda, double t, double log_scale) {
  return s_eval(alpha, lambda, {t - 1.0, t - 2.0, t}, log_scale, Route::automatic, {}).value;
}

double gegenbauer_s_offset_derivative(double alpha, cplx lambda, double t, double log_scale) {
  return s_derivative_factor(alpha, lambda) *
         gegenbauer_s_offset(alpha + 1.0, lambda, t, log_scale);
}

GegenbauerResult gegenbauer_z_eval(double alpha, double lambda, double w, double log_scale,
                                   Route route, const GegenbauerConfig& cfg) {
  return z_eval(alpha, lambda, from_w(w), log_scale, route, cfg);
}

double gegenbauer_z(double alpha, double lambda, double w, double log_scale) {
  return z_eval(alpha, lambda, from_w(w), log_scale, Route::automatic, {}).value;
}

double gegenbauer_z_derivative(double alpha, double lambda, double w, double log_scale) {
  return -(0.5 + alpha + lambda) * gegenbauer_z(alpha + 1.0, lambda, w, log_scale);
}

double gegenbauer_z_offset(double alpha, double lambda, double u, double log_scale) {
  return z_eval(alpha, lambda, {1.0 + u, u, 2.0 + u}, log_scale, Route::automatic, {}).value;
}

double gegenbauer_z_offset_derivative(double alpha, double lambda, double u, double log_scale) {
  return -(0.5 + alpha + lambda) * gegenbauer_z_offset(alpha + 1.0, lambda, u, log_scale);
}

double whipple_z_from_s(double alpha, double lambda, double w) {
  if (!(w > 1.0)) domain_error("Whipple transformation needs w > 1");
  const double lw = log_w2m1(from_w(w));
  const double v = w * std::exp(-0.5 * lw);
  return gegenbauer_s(lambda, cplx(alpha), v, (-0.25 - 0.5 * alpha - 0.5 * lambda) * lw);
}

double whipple_s_from_z(double alpha, double lambda, double w) {
  if (!(w > 1.0)) domain_error("Whipple transformation needs w > 1");
  const double lw = log_w2m1(from_w(w));
  const double v = w * std::exp(-0.5 * lw);
  return gegenbauer_z(lambda, alpha, v, (-0.25 - 0.5 * alpha - 0.5 * lambda) * lw);
}

}  // namespace gint::specfun
