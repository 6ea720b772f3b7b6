#include "gint/pointgreen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gint/error.hpp"
#include "gint/extrapolation.hpp"
#include "gint/genquad.hpp"
#include "gint/quad.hpp"
#include "gint/specfun.hpp"

namespace gint::pointgreen {
namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw NumericError("pointgreen", code, msg);
}

void check_geometry(const Geometry& g) {
  if (g.d < 1) fail(ErrorCode::domain, "dimension must be >= 1");
}

void check_beta(double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::domain, "beta must be positive");
}

double sphere_area(int d) {  // |S^{d-1}|
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// log of the constant in front of Z (hyperbolic) or S (spherical).
double log_curved_prefactor(const Geometry& g, double beta) {
  const double d = g.d;
  if (g.kind == GeometryKind::hyperbolic)
    return 0.5 * std::log(kPi) + std::lgamma(0.5 * (d - 1.0) + beta) - 0.5 * std::numbers::ln2 -
           0.5 * d * std::log(2.0 * kPi) - beta * std::numbers::ln2;
  if (g.d == 1 && beta == 0.0) fail(ErrorCode::pole, "spherical kernel has a pole at d = 1, beta = 0");
  return specfun::log_abs_gamma_sq(0.5 * d - 0.5, beta) - d * std::numbers::ln2 -
         0.5 * d * std::log(kPi);
}

// Radial (-Laplace + beta^2 + shift) f at geodesic distance r.
double radial_residual(const Geometry& g, double beta, double r, double h) {
  auto f = [&](double s) { return green_radial(g, beta, s); };
  const double fp = f(r + h), f0 = f(r), fm = f(r - h);
  const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
  const double d1 = (fp - fm) / (2.0 * h);
  double k = 0.0;
  switch (g.kind) {
    case GeometryKind::euclidean: k = 1.0 / r; break;
    case GeometryKind::hyperbolic: k = 1.0 / std::tanh(r); break;
    case GeometryKind::spherical: k = 1.0 / std::tan(r); break;
  }
  return -(d2 + (g.d - 1) * k * d1) + (beta * beta + g.shift()) * f0;
}

// d/d rho of F(sqrt(rho)) by central differences extrapolated in h^2.
double rho_derivative(const std::function<double(double)>& f_of_beta, double beta) {
  const double rho = beta * beta;
  std::vector<double> steps, values;
  double h = 0.1 * rho;
  for (int k = 0; k < 6; ++k, h *= 0.5) {
    steps.push_back(h);
    values.push_back((f_of_beta(std::sqrt(rho + h)) - f_of_beta(std::sqrt(rho - h))) / (2.0 * h));
  }
  return extrap::richardson(steps, values, 2.0).value;
}

double krein_1d(double beta, double gamma, double x, double y) {
  const double free = std::exp(-beta * std::abs(x - y)) / (2.0 * beta);
  if (std::isinf(gamma)) return free;
  const double den = gamma - 1.0 / (2.0 * beta);
  return free + std::exp(-beta * (std::abs(x) + std::abs(y))) / (4.0 * beta * beta * den);
}

}  // namespace

double Geometry::shift() const {
  const double c = 0.25 * (d - 1.0) * (d - 1.0);
  switch (kind) {
    case GeometryKind::euclidean: return 0.0;
    case GeometryKind::hyperbolic: return -c;
    case GeometryKind::spherical: return c;
  }
  return 0.0;
}

std::string Geometry::name() const {
  switch (kind) {
    case GeometryKind::euclidean: return "euclidean";
    case GeometryKind::hyperbolic: return "hyperbolic";
    case GeometryKind::spherical: return "spherical";
  }
  return "unknown";
}

SpacePoint::SpacePoint(Geometry g, std::vector<double> coords) : g_(g), x_(std::move(coords)) {
  check_geometry(g_);
  const std::size_t n = g_.kind == GeometryKind::euclidean ? g_.d : g_.d + 1;
  if (x_.size() != n) {
    std::ostringstream os;
    os << g_.name() << " point in dimension " << g_.d << " needs " << n << " coordinates";
    fail(ErrorCode::domain, os.str());
  }
  if (g_.kind == GeometryKind::euclidean) return;
  double q = x_[0] * x_[0];
  const double sgn = g_.kind == GeometryKind::hyperbolic ? -1.0 : 1.0;
  double scale = q;
  for (std::size_t i = 1; i < n; ++i) {
    q += sgn * x_[i] * x_[i];
    scale += x_[i] * x_[i];
  }
  if (std::abs(q - 1.0) > 1e-12 * scale)
    fail(ErrorCode::domain, "point is not on the " + g_.name() + " model surface");
  if (g_.kind == GeometryKind::hyperbolic && x_[0] < 1.0 - 1e-12)
    fail(ErrorCode::domain, "hyperbolic point needs x0 >= 1");
  const double s = 1.0 / std::sqrt(q);
  for (auto& v : x_) v *= s;
}

SpacePoint SpacePoint::base(Geometry g) {
  std::vector<double> c(g.kind == GeometryKind::euclidean ? g.d : g.d + 1, 0.0);
  if (g.kind != GeometryKind::euclidean) c[0] = 1.0;
  return SpacePoint(g, std::move(c));
}

SpacePoint SpacePoint::polar(Geometry g, double r, std::vector<double> dir) {
  check_geometry(g);
  if (dir.empty()) {
    dir.assign(g.d, 0.0);
    dir[0] = 1.0;
  }
  if (dir.size() != static_cast<std::size_t>(g.d)) fail(ErrorCode::domain, "direction has wrong length");
  double n = 0.0;
  for (double v : dir) n += v * v;
  n = std::sqrt(n);
  if (!(n > 0.0)) fail(ErrorCode::domain, "direction must be nonzero");
  std::vector<double> c;
  switch (g.kind) {
    case GeometryKind::euclidean:
      for (double v : dir) c.push_back(r * v / n);
      break;
    case GeometryKind::hyperbolic:
      c.push_back(std::cosh(r));
      for (double v : dir) c.push_back(std::sinh(r) * v / n);
      break;
    case GeometryKind::spherical:
      c.push_back(std::cos(r));
      for (double v : dir) c.push_back(std::sin(r) * v / n);
      break;
  }
  return SpacePoint(g, std::move(c));
}

double invariant_argument(const SpacePoint& x, const SpacePoint& y) {
  const Geometry& g = x.geometry();
  if (g.kind != y.geometry().kind || g.d != y.geometry().d)
    fail(ErrorCode::domain, "points belong to different geometries");
  const auto& a = x.coords();
  const auto& b = y.coords();
  if (g.kind == GeometryKind::euclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  }
  const double sgn = g.kind == GeometryKind::hyperbolic ? -1.0 : 1.0;
  double s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += sgn * a[i] * b[i];
  return s;
}

double distance(const SpacePoint& x, const SpacePoint& y) {
  const Geometry& g = x.geometry();
  if (g.kind != y.geometry().kind || g.d != y.geometry().d)
    fail(ErrorCode::domain, "points belong to different geometries");
  const auto& a = x.coords();
  const auto& b = y.coords();
  double spatial = 0.0;
  for (std::size_t i = g.kind == GeometryKind::euclidean ? 0 : 1; i < a.size(); ++i)
    spatial += (a[i] - b[i]) * (a[i] - b[i]);
  switch (g.kind) {
    case GeometryKind::euclidean: return std::sqrt(spatial);
    case GeometryKind::hyperbolic: {
      const double d0 = a[0] - b[0];
      return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, spatial - d0 * d0)));
    }
    case GeometryKind::spherical: {
      const double d0 = a[0] - b[0];
      return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(spatial + d0 * d0)));
    }
  }
  return 0.0;
}

double green_radial(const Geometry& g, double beta, double r) {
  check_geometry(g);
  check_beta(beta);
  if (!(r > 0.0)) fail(ErrorCode::singularity, "Green function at coincident points");
  const double alpha = 0.5 * g.d - 1.0;
  switch (g.kind) {
    case GeometryKind::euclidean: {
      const double x = beta * r;
      const double k = x > 600.0 ? specfun::bessel_k_scaled(alpha, x) * std::exp(-x)
                                 : specfun::bessel_k(alpha, x);
      return std::pow(2.0 * kPi, -0.5 * g.d) * std::pow(beta / r, alpha) * k;
    }
    case GeometryKind::hyperbolic: {
      const double s = std::sinh(0.5 * r);
      return specfun::gegenbauer_z_offset(alpha, beta, 2.0 * s * s,
                                          log_curved_prefactor(g, beta));
    }
    case GeometryKind::spherical: {
      if (r > kPi) fail(ErrorCode::domain, "spherical distance exceeds pi");
      const double s = std::sin(0.5 * r);
      return specfun::gegenbauer_s_offset(alpha, {0.0, beta}, 2.0 * s * s,
                                          log_curved_prefactor(g, beta));
    }
  }
  return 0.0;
}

double green_free(const Geometry& g, double beta, const SpacePoint& x, const SpacePoint& y) {
  return green_radial(g, beta, distance(x, y));
}

double sigma_general(int d, double beta) {
  if (d < 1) fail(ErrorCode::domain, "dimension must be >= 1");
  check_beta(beta);
  if (d % 2 == 1) {
    const int m = (d - 1) / 2;
    const double sign = ((d + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::pow(beta, d - 2.0) /
           (std::pow(4.0 * kPi, m) * 2.0 * specfun::pochhammer(0.5, m).real());
  }
  const int m = d / 2;
  const double sign = (m + 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::pow(beta, d - 2.0) / (std::pow(4.0 * kPi, m) * std::tgamma(m)) *
         (2.0 - 2.0 * specfun::digamma(m) + std::log(beta * beta / 4.0));
}

double sigma(int d, double beta) {
  check_beta(beta);
  switch (d) {
    case 1: return -1.0 / (2.0 * beta);
    case 2: return std::log(beta * beta) / (4.0 * kPi);
    case 3: return beta / (4.0 * kPi);
    default: return sigma_general(d, beta);
  }
}

double DerivativeCheck::rel_diff() const {
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

DerivativeCheck sigma_derivative_check(int d, double beta) {
  check_beta(beta);
  DerivativeCheck c;
  c.lhs = rho_derivative([d](double b) { return sigma(d, b); }, beta);
  const double alpha = 0.5 * d - 1.0;
  const double pref = std::pow(beta * beta, alpha) * std::pow(kPi, 0.5 * d) /
                      (std::pow(2.0 * kPi, d) * std::tgamma(0.5 * d));
  c.rhs = pref * genquad::gen_bilinear_macdonald(alpha, beta, beta).value;
  return c;
}

double sigma_derivative_curved(const Geometry& g, double beta) {
  check_geometry(g);
  check_beta(beta);
  if (g.kind == GeometryKind::euclidean) {
    const double alpha = 0.5 * g.d - 1.0;
    return std::pow(beta * beta, alpha) * std::pow(kPi, 0.5 * g.d) /
           (std::pow(2.0 * kPi, g.d) * std::tgamma(0.5 * g.d)) *
           genquad::gen_bilinear_macdonald(alpha, beta, beta).value;
  }
  const double alpha = 0.5 * g.d - 1.0;
  const auto kind = g.kind == GeometryKind::hyperbolic ? genquad::GegenbauerKind::Z
                                                       : genquad::GegenbauerKind::S;
  const double lc = log_curved_prefactor(g, beta);
  // The canonical integral carries the measure 2 dw.
  return 0.5 * sphere_area(g.d) *
         genquad::gen_bilinear_gegenbauer(kind, alpha, beta, beta, lc).value;
}

double sigma_numeric_curved(const Geometry& g, double beta) {
  check_beta(beta);
  if (g.kind == GeometryKind::euclidean)
    fail(ErrorCode::domain, "sigma_numeric_curved needs a curved geometry");
  if (beta == 1.0) return 0.0;
  auto integrand = [&](double b) { return sigma_derivative_curved(g, b) * 2.0 * b; };
  quad::Options o;
  o.rel_tol = 1e-10;
  return quad::integrate_checked(integrand, 1.0, beta, o).value;
}

double krein_sigma(const KreinKernelSpec& s) {
  if (s.geometry.kind == GeometryKind::euclidean) return sigma(s.geometry.d, s.beta);
  return sigma_numeric_curved(s.geometry, s.beta);
}

namespace {

double coupling(const KreinKernelSpec& s) {
  if (std::isinf(s.gamma)) return 0.0;
  const double den = s.gamma + krein_sigma(s);
  if (std::abs(den) < 1e-12) {
    std::ostringstream os;
    os << "gamma + Sigma = " << den << " vanishes (resonance)";
    fail(ErrorCode::resonance, os.str());
  }
  return 1.0 / den;
}

}  // namespace

double krein_green(const KreinKernelSpec& s, const SpacePoint& x, const SpacePoint& y) {
  const Geometry& g = s.geometry;
  const double free = green_free(g, s.beta, x, y);
  if (std::isinf(s.gamma)) return free;
  const SpacePoint o = SpacePoint::base(g);
  const double rx = distance(x, o), ry = distance(y, o);
  if (rx == 0.0 || ry == 0.0) fail(ErrorCode::singularity, "point coincides with the interaction site");
  return free + green_radial(g, s.beta, rx) * green_radial(g, s.beta, ry) * coupling(s);
}

double pde_residual_check(const KreinKernelSpec& s, const SpacePoint& x, const SpacePoint& y,
                          double h) {
  const Geometry& g = s.geometry;
  if (!(h > 0.0)) fail(ErrorCode::domain, "step must be positive");
  const SpacePoint o = SpacePoint::base(g);
  const double rxy = distance(x, y);
  const double rxo = distance(x, o);
  if (rxy < 10.0 * h || (!std::isinf(s.gamma) && rxo < 10.0 * h))
    fail(ErrorCode::domain, "stencil too close to a source point");

  if (g.kind == GeometryKind::euclidean) {
    const double c = coupling(s);
    const double gy = std::isinf(s.gamma) ? 0.0 : green_free(g, s.beta, o, y);
    auto kernel = [&](const std::vector<double>& p) {
      const SpacePoint q(g, p);
      double v = green_free(g, s.beta, q, y);
      if (c != 0.0) v += green_free(g, s.beta, q, o) * gy * c;
      return v;
    };
    std::vector<double> p = x.coords();
    const double f0 = kernel(p);
    double lap = 0.0;
    for (int i = 0; i < g.d; ++i) {
      const double xi = p[i];
      p[i] = xi + h;
      const double fp = kernel(p);
      p[i] = xi - h;
      const double fm = kernel(p);
      p[i] = xi;
      lap += (fp - 2.0 * f0 + fm) / (h * h);
    }
    return -lap + s.beta * s.beta * f0;
  }

  if (g.kind == GeometryKind::spherical && (rxy + h > kPi || rxo + h > kPi))
    fail(ErrorCode::domain, "stencil reaches the antipode");
  double res = radial_residual(g, s.beta, rxy, h);
  if (!std::isinf(s.gamma))
    res += coupling(s) * green_free(g, s.beta, o, y) * radial_residual(g, s.beta, rxo, h);
  return res;
}

DerivativeCheck resolvent_derivative_check_1d(double beta, double gamma, double x, double y) {
  check_beta(beta);
  DerivativeCheck c;
  c.lhs = rho_derivative([&](double b) { return krein_1d(b, gamma, x, y); }, beta);

  auto f = [&](double z) { return krein_1d(beta, gamma, x, z) * krein_1d(beta, gamma, z, y); };
  std::vector<double> br{x, y, 0.0};
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  quad::Options o;
  o.rel_tol = 1e-12;
  quad::Result total = quad::integrate_to_infinity(f, br.back(), 1.0 / beta, o);
  total += quad::integrate_to_infinity([&](double z) { return f(-z); }, -br.front(), 1.0 / beta, o);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) total += quad::integrate(f, br[i], br[i + 1], o);
  if (!total.converged) fail(ErrorCode::convergence, "resolvent-square quadrature did not converge");
  c.rhs = -total.value;
  return c;
}

}  // namespace gint::pointgreen
