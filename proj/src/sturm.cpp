#include "gint/sturm.hpp"

#include <cmath>
#include <sstream>

#include "gint/error.hpp"
#include "gint/specfun.hpp"

namespace gint::sturm {
namespace {

double default_step(double r, double h) { return h > 0.0 ? h : 1e-5 * std::max(1.0, std::abs(r)); }

void require_interior(const SturmLiouvilleSpec& spec, double r, double h) {
  if (!(r > spec.a && r < spec.b)) {
    std::ostringstream os;
    os << "point " << r << " is not inside ]" << spec.a << ", " << spec.b << "[";
    throw NumericError("sturm", ErrorCode::domain, os.str());
  }
  if (!(r - h > spec.a && r + h < spec.b))
    throw NumericError("sturm", ErrorCode::domain, "finite-difference stencil leaves the interval");
  if (h <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r)))
    throw NumericError("sturm", ErrorCode::precision, "finite-difference step underflows");
}

double derivative(const Eigenpair& e, double r, double h) {
  if (e.df) return e.df(r);
  return (e.f(r + h) - e.f(r - h)) / (2.0 * h);
}

// Safe K: exp(-x) e^x K underflows to 0 instead of throwing.
double k_value(double alpha, double x) {
  if (x < 600.0) return specfun::bessel_k(alpha, x);
  return specfun::bessel_k_scaled(alpha, x) * std::exp(-x);
}

double k_deriv(double alpha, double x) {
  if (x < 600.0) return specfun::bessel_k_derivative(alpha, x);
  return (std::abs(alpha) / x * specfun::bessel_k_scaled(alpha, x) -
          specfun::bessel_k_scaled(alpha + (alpha >= 0 ? 1.0 : -1.0), x)) *
         std::exp(-x);
}

}  // namespace

SturmLiouvilleSpec bessel_spec(double alpha) {
  SturmLiouvilleSpec s;
  s.p = [](double r) { return 2.0 * r; };
  s.q = [alpha](double r) { return -2.0 * alpha * alpha / r; };
  s.rho = [](double r) { return 2.0 * r; };
  s.a = 0.0;
  s.b = std::numeric_limits<double>::infinity();
  s.name = "bessel";
  return s;
}

SturmLiouvilleSpec gegenbauer_spec_interval(double alpha) {
  SturmLiouvilleSpec s;
  s.p = [alpha](double t) { return 2.0 * std::pow(t * (2.0 - t), alpha + 1.0); };
  s.q = [](double) { return 0.0; };
  s.rho = [alpha](double t) { return 2.0 * std::pow(t * (2.0 - t), alpha); };
  s.a = 0.0;
  s.b = 2.0;
  s.name = "gegenbauer-interval";
  return s;
}

SturmLiouvilleSpec gegenbauer_spec_half_line(double alpha) {
  SturmLiouvilleSpec s;
  s.p = [alpha](double u) { return -2.0 * std::pow(u * (u + 2.0), alpha + 1.0); };
  s.q = [](double) { return 0.0; };
  s.rho = [alpha](double u) { return 2.0 * std::pow(u * (u + 2.0), alpha); };
  s.a = 0.0;
  s.b = std::numeric_limits<double>::infinity();
  s.name = "gegenbauer-half-line";
  s.power_tail = true;
  return s;
}

Eigenpair bessel_eigenpair(double alpha, double b) {
  Eigenpair e;
  e.f = [alpha, b](double r) { return k_value(alpha, b * r); };
  e.df = [alpha, b](double r) { return b * k_deriv(alpha, b * r); };
  e.energy = -b * b;
  return e;
}

Eigenpair gegenbauer_s_eigenpair(double alpha, std::complex<double> lambda) {
  Eigenpair e;
  e.f = [alpha, lambda](double t) { return specfun::gegenbauer_s_offset(alpha, lambda, t); };
  e.df = [alpha, lambda](double t) {
    return specfun::gegenbauer_s_offset_derivative(alpha, lambda, t);
  };
  e.energy = (lambda * lambda).real() - (alpha + 0.5) * (alpha + 0.5);
  return e;
}

Eigenpair gegenbauer_z_eigenpair(double alpha, double lambda) {
  Eigenpair e;
  e.f = [alpha, lambda](double u) { return specfun::gegenbauer_z_offset(alpha, lambda, u); };
  e.df = [alpha, lambda](double u) {
    return specfun::gegenbauer_z_offset_derivative(alpha, lambda, u);
  };
  e.energy = lambda * lambda - (alpha + 0.5) * (alpha + 0.5);
  return e;
}

double apply_operator(const SturmLiouvilleSpec& spec, const RealFunction& f, double r, double h,
                      const RealFunction& df) {
  h = default_step(r, h);
  require_interior(spec, r, h);
  double flux;
  if (df) {
    flux = (spec.p(r + h) * df(r + h) - spec.p(r - h) * df(r - h)) / (2.0 * h);
  } else {
    const double f0 = f(r);
    flux = (spec.p(r + 0.5 * h) * (f(r + h) - f0) - spec.p(r - 0.5 * h) * (f0 - f(r - h))) / (h * h);
  }
  return -(flux + spec.q(r) * f(r)) / spec.rho(r);
}

double wronskian(const SturmLiouvilleSpec& spec, const Eigenpair& f1, const Eigenpair& f2,
                 double r, double h) {
  h = default_step(r, h);
  if (!f1.df || !f2.df) require_interior(spec, r, h);
  else if (!(r > spec.a && r < spec.b))
    throw NumericError("sturm", ErrorCode::domain, "Wronskian evaluated outside the interval");
  const double p = spec.p(r);
  return f1.f(r) * p * derivative(f2, r, h) - derivative(f1, r, h) * p * f2.f(r);
}

quad::Result pairing_integral(const SturmLiouvilleSpec& spec, const RealFunction& f1,
                              const RealFunction& f2, const quad::Options& opts) {
  auto g = [&](double r) { return f1(r) * f2(r) * spec.rho(r); };
  const bool lower_inf = std::isinf(spec.a), upper_inf = std::isinf(spec.b);
  if (lower_inf) throw NumericError("sturm", ErrorCode::unsupported, "infinite lower endpoint");
  double mid;
  if (upper_inf)
    mid = spec.a + 1.0;
  else
    mid = 0.5 * (spec.a + spec.b);
  quad::Result total = quad::integrate_toward_endpoint(g, spec.a, mid, spec.a, opts);
  if (upper_inf) {
    total += spec.power_tail ? quad::integrate_power_tail(g, mid, opts)
                             : quad::integrate_to_infinity(g, mid, 1.0, opts);
  } else {
    total += quad::integrate_toward_endpoint(g, mid, spec.b, spec.b, opts);
  }
  if (!total.converged) {
    std::ostringstream os;
    os << "pairing integral did not converge (achieved error " << total.error << ")";
    throw NumericError("sturm", ErrorCode::convergence, os.str());
  }
  return total;
}

extrap::Estimate boundary_wronskian(const SturmLiouvilleSpec& spec, const Eigenpair& f1,
                                    const Eigenpair& f2, bool lower, const GreenOptions& opts) {
  auto w = [&](double r) { return wronskian(spec, f1, f2, r); };
  const double end = lower ? spec.a : spec.b;
  if (std::isinf(end)) {
    // Sample outward until W has decayed below rounding or stops being representable.
    std::vector<double> seq;
    double r = opts.far_start;
    double peak = 0.0;
    for (int i = 0; i < 60; ++i, r *= 2.0) {
      double v;
      try {
        v = w(r);
      } catch (const NumericError&) {
        break;
      }
      if (!std::isfinite(v)) break;
      seq.push_back(v);
      peak = std::max(peak, std::abs(v));
      if (seq.size() >= static_cast<std::size_t>(opts.limit_terms)) break;
      if (std::abs(v) <= 1e-18 * peak) break;
    }
    if (seq.empty())
      throw NumericError("sturm", ErrorCode::convergence, "no sample of W near infinity");
    if (std::abs(seq.back()) <= 1e-16 * peak) {
      extrap::Estimate e;
      e.samples = seq;
      e.value = 0.0;
      e.error = std::abs(seq.back());
      return e;
    }
    return extrap::wynn_epsilon(seq);
  }
  const double length = std::isinf(spec.b) || std::isinf(spec.a) ? 1.0 : spec.b - spec.a;
  return extrap::endpoint_limit(w, end, opts.endpoint_offset * length, lower ? 1 : -1,
                                opts.limit_terms);
}

GreenCheck greens_identity_check(const SturmLiouvilleSpec& spec, const Eigenpair& f1,
                                 const Eigenpair& f2, const GreenOptions& opts) {
  if (f1.energy == f2.energy)
    throw NumericError("sturm", ErrorCode::redirect,
                       "equal energies: use diagonal_integral for <f|f>");
  GreenCheck c;
  const quad::Result q = pairing_integral(spec, f1.f, f2.f, opts.quad);
  c.lhs = q.value;
  c.quad_error = q.error;
  const extrap::Estimate lo = boundary_wronskian(spec, f1, f2, true, opts);
  const extrap::Estimate hi = boundary_wronskian(spec, f1, f2, false, opts);
  extrap::require_converged(lo, opts.limit_rel_tol, 1.0, "W at lower endpoint");
  extrap::require_converged(hi, opts.limit_rel_tol, 1.0, "W at upper endpoint");
  c.w_lower = lo.value;
  c.w_upper = hi.value;
  c.rhs = (hi.value - lo.value) / (f1.energy - f2.energy);
  return c;
}

extrap::Estimate diagonal_integral(const SturmLiouvilleSpec& spec, const EigenFamily& family,
                                   double t1, const DiagonalOptions& opts) {
  const Eigenpair base = family(t1);
  auto rhs = [&](double t2) {
    const Eigenpair other = family(t2);
    const extrap::Estimate lo = boundary_wronskian(spec, base, other, true, opts.green);
    const extrap::Estimate hi = boundary_wronskian(spec, base, other, false, opts.green);
    extrap::require_converged(lo, opts.green.limit_rel_tol, 1.0, "W at lower endpoint");
    extrap::require_converged(hi, opts.green.limit_rel_tol, 1.0, "W at upper endpoint");
    return (hi.value - lo.value) / (base.energy - other.energy);
  };
  extrap::Estimate e = extrap::limit_at_point(rhs, t1, opts.first_step, true, opts.terms);
  extrap::require_converged(e, 1e-6, 1e-300, "diagonal Green's-identity limit");
  return e;
}

}  // namespace gint::sturm
