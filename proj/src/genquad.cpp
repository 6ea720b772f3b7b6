#include "gint/genquad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gint/error.hpp"
#include "gint/quad.hpp"
#include "gint/series.hpp"

namespace gint::genquad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool same_exponent(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

bool in_omega(const SingularTerm& t) { return t.log_power == 0 && t.exponent <= -1.0 + kDelta; }

double term_value(const SingularTerm& t, double r) {
  double v = t.coefficient * std::pow(r, t.exponent);
  if (t.log_power > 0) v *= std::pow(std::log(r), t.log_power);
  return v;
}

// int_lo^hi |c| r^k dr, used as a rounding-noise scale for f - P.
double abs_power_integral(const std::vector<SingularTerm>& terms, double lo, double hi) {
  double s = 0.0;
  for (const auto& t : terms) {
    const double k = t.exponent;
    const double c = std::abs(t.coefficient);
    if (same_exponent(k, -1.0))
      s += c * std::log(hi / lo);
    else
      s += c * (std::pow(hi, k + 1.0) - std::pow(lo, k + 1.0)) / (k + 1.0);
  }
  return std::abs(s);
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void probe_expansion(const GenIntegrand& f, const std::vector<SingularTerm>& omega, double s) {
  if (omega.empty()) return;
  const double base = std::min(s, f.expansion.radius);
  double r_prev = 0.0, sig_prev = 0.0;
  for (double scale : {1e-2, 1e-3}) {
    const double r = base * scale;
    const double fr = f.evaluate(r);
    double abs_p = 0.0;
    for (const auto& t : omega) abs_p += std::abs(term_value(t, r));
    const double res = std::abs(fr - evaluate_terms(omega, r));
    const double noise = 1e4 * kEps * (abs_p + std::abs(fr));
    const double sig = res > noise ? res : 0.0;
    if (r_prev > 0.0 && sig > 0.0 && sig_prev > 0.0) {
      const double apparent = std::log(sig / sig_prev) / std::log(r / r_prev);
      if (apparent < -1.0 + 0.5 * kDelta) {
        std::ostringstream os;
        os << "expansion does not match the integrand near 0: remainder behaves like r^"
           << apparent << " (" << f.name << ")";
        throw NumericError("genquad", ErrorCode::inconsistency, os.str());
      }
    }
    r_prev = r;
    sig_prev = sig;
  }
}

quad::Options quad_options(const GenOptions& o) {
  quad::Options q;
  q.rel_tol = o.rel_tol;
  q.abs_tol = 0.0;
  q.max_subdivisions = o.max_subdivisions;
  return q;
}

void require(const quad::Result& r, const char* what) {
  if (r.converged) return;
  std::ostringstream os;
  os << what << " did not converge (achieved error " << r.error << ")";
  throw NumericError("genquad", ErrorCode::convergence, os.str());
}

// Hook for a transformed integrand: rem(x(u)) J(u) plus the terms that move
// across the subtraction threshold.
RealFunction transformed_hook(const GenIntegrand& f, std::function<double(double)> x_of_u,
                              std::function<double(double)> jac,
                              const std::vector<SingularTerm>& gained,
                              const std::vector<SingularTerm>& lost) {
  const std::vector<SingularTerm> omega = f.expansion.subtracted();
  return [f, x_of_u, jac, gained, lost, omega](double u) {
    const double x = x_of_u(u);
    double rem;
    if (f.remainder && x <= f.remainder_radius)
      rem = f.remainder(x);
    else
      rem = f.evaluate(x) - evaluate_terms(omega, x);
    return rem * jac(u) + evaluate_terms(gained, u) - evaluate_terms(lost, u);
  };
}

}  // namespace

// ----------------------------------------------------------------- expansions

double evaluate_terms(const std::vector<SingularTerm>& terms, double r) {
  double s = 0.0;
  for (const auto& t : terms) s += term_value(t, r);
  return s;
}

SingularExpansion SingularExpansion::merged(std::vector<SingularTerm> terms, double radius) {
  std::sort(terms.begin(), terms.end(), [](const SingularTerm& a, const SingularTerm& b) {
    if (!same_exponent(a.exponent, b.exponent)) return a.exponent < b.exponent;
    return a.log_power < b.log_power;
  });
  SingularExpansion e;
  e.radius = radius;
  double abs_acc = 0.0;
  auto flush = [&]() {
    if (!e.terms.empty() && std::abs(e.terms.back().coefficient) <= 1e-14 * abs_acc)
      e.terms.pop_back();
  };
  for (const auto& t : terms) {
    if (!e.terms.empty() && same_exponent(e.terms.back().exponent, t.exponent) &&
        e.terms.back().log_power == t.log_power) {
      e.terms.back().coefficient += t.coefficient;
      abs_acc += std::abs(t.coefficient);
    } else {
      flush();
      e.terms.push_back(t);
      abs_acc = std::abs(t.coefficient);
    }
  }
  flush();
  return e;
}

double SingularExpansion::anomaly() const {
  for (const auto& t : terms)
    if (t.log_power == 0 && same_exponent(t.exponent, -1.0)) return t.coefficient;
  return 0.0;
}

bool SingularExpansion::anomalous() const {
  for (const auto& t : terms) {
    const double n = std::round(t.exponent);
    if (t.log_power == 0 && n <= -1.0 && same_exponent(t.exponent, n) && t.coefficient != 0.0)
      return true;
  }
  return false;
}

std::vector<SingularTerm> SingularExpansion::subtracted() const {
  std::vector<SingularTerm> out;
  for (const auto& t : terms)
    if (in_omega(t)) out.push_back(t);
  return out;
}

double SingularExpansion::leading_regular_exponent() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (!in_omega(t)) e = std::min(e, t.exponent);
  return e;
}

double SingularExpansion::evaluate(double r) const { return evaluate_terms(terms, r); }

double SingularExpansion::evaluate_subtracted(double r) const {
  double s = 0.0;
  for (const auto& t : terms)
    if (in_omega(t)) s += term_value(t, r);
  return s;
}

double SingularExpansion::evaluate_rest(double r) const {
  double s = 0.0;
  for (const auto& t : terms)
    if (!in_omega(t)) s += term_value(t, r);
  return s;
}

SingularExpansion SingularExpansion::rescaled(double a) const {
  std::vector<SingularTerm> out;
  const double la = std::log(a);
  for (const auto& t : terms) {
    const double c = t.coefficient * std::pow(a, t.exponent + 1.0);
    for (int j = 0; j <= t.log_power; ++j)
      out.push_back({t.exponent, j, c * binom(t.log_power, j) * std::pow(la, t.log_power - j)});
  }
  return merged(std::move(out), radius / a);
}

SingularExpansion SingularExpansion::power_transformed(double p) const {
  std::vector<SingularTerm> out;
  for (const auto& t : terms)
    out.push_back({p * t.exponent + p - 1.0, t.log_power,
                   t.coefficient * std::pow(p, t.log_power + 1.0)});
  return merged(std::move(out), std::pow(radius, 1.0 / p));
}

SingularExpansion SingularExpansion::scaled(double c, double shift) const {
  SingularExpansion e = *this;
  for (auto& t : e.terms) {
    t.coefficient *= c;
    t.exponent += shift;
  }
  return e;
}

void SingularExpansion::validate() const {
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent))
      throw NumericError("genquad", ErrorCode::inconsistency, "non-finite expansion term");
    if (t.log_power < 0)
      throw NumericError("genquad", ErrorCode::inconsistency, "negative log power");
    if (t.log_power > 0 && t.exponent <= -1.0) {
      std::ostringstream os;
      os << "log term at exponent " << t.exponent
         << " is not covered by the generalized integral (needs exponent > -1)";
      throw NumericError("genquad", ErrorCode::inconsistency, os.str());
    }
  }
  if (!(radius > 0.0))
    throw NumericError("genquad", ErrorCode::inconsistency, "expansion radius must be positive");
}

SingularExpansion multiply(const SingularExpansion& a, const SingularExpansion& b) {
  std::vector<SingularTerm> out;
  out.reserve(a.terms.size() * b.terms.size());
  for (const auto& x : a.terms)
    for (const auto& y : b.terms)
      out.push_back({x.exponent + y.exponent, x.log_power + y.log_power,
                     x.coefficient * y.coefficient});
  return SingularExpansion::merged(std::move(out), std::min(a.radius, b.radius));
}

// ----------------------------------------------------------------- engine

GenResult gen_integrate(const GenIntegrand& f, double split, const GenOptions& opts) {
  f.expansion.validate();
  if (!(split > 0.0) || !(split < f.upper)) {
    std::ostringstream os;
    os << "split point " << split << " must lie in (0, " << f.upper << ")";
    throw NumericError("genquad", ErrorCode::domain, os.str());
  }
  const std::vector<SingularTerm> omega = f.expansion.subtracted();
  if (opts.probe) probe_expansion(f, omega, split);

  GenResult res;
  res.anomaly = f.expansion.anomaly();
  double sing = 0.0;
  for (const auto& t : omega)
    if (!same_exponent(t.exponent, -1.0))
      sing += t.coefficient * std::pow(split, t.exponent + 1.0) / (t.exponent + 1.0);

  const bool hook = static_cast<bool>(f.remainder);
  auto rem = [&](double r) {
    if (hook && r <= f.remainder_radius) return f.remainder(r);
    return f.evaluate(r) - evaluate_terms(omega, r);
  };
  std::function<double(double, double)> noise;
  if (!omega.empty()) {
    noise = [&](double inner, double outer) {
      if (hook && outer <= f.remainder_radius) return 0.0;
      return 64.0 * kEps * abs_power_integral(omega, inner, outer);
    };
  }
  const quad::Options q = quad_options(opts);
  const quad::Result head = quad::integrate_toward_endpoint(rem, 0.0, split, 0.0, q, noise);
  require(head, "remainder integral on (0, split)");

  quad::Result tail;
  switch (f.tail.kind) {
    case TailKind::finite:
      tail = quad::integrate_toward_endpoint(f.evaluate, split, f.upper, f.upper, q);
      break;
    case TailKind::power:
      if (!std::isinf(f.upper))
        throw NumericError("genquad", ErrorCode::domain, "power tail needs an infinite upper limit");
      tail = quad::integrate_power_tail(f.evaluate, split, q);
      break;
    case TailKind::exponential: {
      if (!std::isinf(f.upper))
        throw NumericError("genquad", ErrorCode::domain,
                           "exponential tail needs an infinite upper limit");
      const double rate = f.tail.rate;
      const double cut = split + 40.0 / rate;
      tail = quad::integrate(f.evaluate, split, cut, q);
      const double bound = std::abs(f.evaluate(cut)) / rate;
      if (bound > 1e-3 * opts.rel_tol * std::max(std::abs(tail.value), std::abs(head.value)))
        tail += quad::integrate_to_infinity(f.evaluate, cut, 1.0 / rate, q);
      else
        tail.error += bound;
      break;
    }
  }
  require(tail, "integral on (split, upper)");
  res.value = sing + head.value + tail.value;
  res.error = head.error + tail.error;
  res.evaluations = head.evaluations + tail.evaluations;
  return res;
}

double split_shift(const GenIntegrand& f, double c, const GenOptions& opts) {
  return gen_integrate(f, c, opts).value - gen_integrate(f, 1.0, opts).value;
}

GenIntegrand rescale(const GenIntegrand& f, double a) {
  if (!(a > 0.0)) throw NumericError("genquad", ErrorCode::domain, "scale factor must be positive");
  GenIntegrand g;
  const RealFunction fe = f.evaluate;
  g.evaluate = [fe, a](double u) { return a * fe(a * u); };
  g.expansion = f.expansion.rescaled(a);
  g.upper = f.upper / a;
  g.tail = f.tail;
  if (f.tail.kind == TailKind::exponential) g.tail.rate = f.tail.rate * a;
  g.remainder = transformed_hook(
      f, [a](double u) { return a * u; }, [a](double) { return a; }, {}, {});
  g.remainder_radius = (f.remainder ? f.remainder_radius : f.expansion.radius) / a;
  g.name = f.name + " rescaled";
  return g;
}

GenIntegrand power_transform(const GenIntegrand& f, double p) {
  if (!(p > 0.0)) throw NumericError("genquad", ErrorCode::domain, "power must be positive");
  GenIntegrand g;
  const RealFunction fe = f.evaluate;
  g.evaluate = [fe, p](double u) { return fe(std::pow(u, p)) * p * std::pow(u, p - 1.0); };
  g.expansion = f.expansion.power_transformed(p);
  g.upper = std::pow(f.upper, 1.0 / p);
  g.tail = f.tail;
  if (f.tail.kind == TailKind::power) g.tail.rate = p * f.tail.rate - p + 1.0;
  // Terms that cross the threshold under the map.
  std::vector<SingularTerm> gained, lost;
  for (const auto& t : f.expansion.terms) {
    const SingularTerm m{p * t.exponent + p - 1.0, t.log_power,
                         t.coefficient * std::pow(p, t.log_power + 1.0)};
    if (in_omega(t) && !in_omega(m)) gained.push_back(m);
    if (!in_omega(t) && in_omega(m)) lost.push_back(m);
  }
  g.remainder = transformed_hook(
      f, [p](double u) { return std::pow(u, p); },
      [p](double u) { return p * std::pow(u, p - 1.0); }, gained, lost);
  g.remainder_radius = std::pow(f.remainder ? f.remainder_radius : f.expansion.radius, 1.0 / p);
  g.name = f.name + " power-transformed";
  return g;
}

CheckPair scaling_check(const GenIntegrand& f, double a, const GenOptions& opts) {
  CheckPair c;
  c.lhs = gen_integrate(f, 1.0, opts).value;
  c.rhs = gen_integrate(rescale(f, a), 1.0, opts).value + f.expansion.anomaly() * std::log(a);
  return c;
}

CheckPair power_check(const GenIntegrand& f, double p, const GenOptions& opts) {
  CheckPair c;
  c.lhs = gen_integrate(f, 1.0, opts).value;
  c.rhs = gen_integrate(power_transform(f, p), 1.0, opts).value;
  return c;
}

// ----------------------------------------------------------------- change of variables

SmoothMap linear_map(double c) {
  SmoothMap m;
  m.g = [c](double u) { return c * u; };
  m.dg = [c](double) { return c; };
  m.taylor = {0.0, c};
  m.taylor.resize(48, 0.0);
  m.name = "linear";
  return m;
}

SmoothMap quadratic_map() {
  SmoothMap m;
  m.g = [](double u) { return u + u * u; };
  m.dg = [](double u) { return 1.0 + 2.0 * u; };
  m.taylor = {0.0, 1.0, 1.0};
  m.taylor.resize(48, 0.0);
  m.name = "u+u^2";
  return m;
}

SmoothMap sinh_map() {
  SmoothMap m;
  m.g = [](double u) { return std::sinh(u); };
  m.dg = [](double u) { return std::cosh(u); };
  m.taylor.assign(48, 0.0);
  double fact = 1.0;
  for (std::size_t n = 1; n < m.taylor.size(); n += 2) {
    m.taylor[n] = 1.0 / fact;
    fact *= static_cast<double>((n + 1) * (n + 2));
  }
  m.name = "sinh";
  return m;
}

namespace {

// h(u) = g(u)/u as a series with n terms.
series::Series quotient_series(const SmoothMap& g, std::size_t n, int needed_order) {
  if (g.taylor.size() < 2 || !(g.taylor[1] > 0.0))
    throw NumericError("genquad", ErrorCode::domain, "map needs g'(0) > 0");
  if (g.taylor.size() < n + 1) {
    std::ostringstream os;
    os << "map '" << g.name << "' lacks Taylor data for derivative order " << needed_order;
    throw NumericError("genquad", ErrorCode::precision, os.str());
  }
  return series::Series(g.taylor.begin() + 1, g.taylor.begin() + 1 + static_cast<long>(n));
}

series::Series derivative_series(const SmoothMap& g, std::size_t n) {
  series::Series d(n, 0.0);
  for (std::size_t k = 0; k < n && k + 1 < g.taylor.size(); ++k)
    d[k] = static_cast<double>(k + 1) * g.taylor[k + 1];
  return d;
}

constexpr std::size_t kMapSeriesTerms = 40;

}  // namespace

double change_of_var_correction(const SingularExpansion& e, const SmoothMap& g) {
  double corr = 0.0;
  for (const auto& t : e.subtracted()) {
    const double n = std::round(t.exponent);
    if (!same_exponent(t.exponent, n) || n > -1.0) continue;
    const int l = static_cast<int>(-n);
    if (l == 1) {
      if (g.taylor.size() < 2)
        throw NumericError("genquad", ErrorCode::precision, "map lacks g'(0)");
      corr -= t.coefficient * std::log(g.taylor[1]);
      continue;
    }
    // d^{l-1}/du^{l-1} (u/g)^{l-1} at 0 = (l-1)! [u^{l-1}] (u/g)^{l-1}
    const series::Series h = quotient_series(g, static_cast<std::size_t>(l), l - 1);
    const series::Series q = series::power(h, -static_cast<double>(l - 1));
    corr += t.coefficient / (l - 1) * q[static_cast<std::size_t>(l - 1)];
  }
  return corr;
}

SingularExpansion transform_expansion(const SingularExpansion& e, const SmoothMap& g, double upto) {
  std::vector<SingularTerm> out;
  for (const auto& t : e.terms) {
    if (t.exponent > upto) continue;
    if (t.log_power != 0)
      throw NumericError("genquad", ErrorCode::unsupported,
                         "change of variables for log terms is not implemented");
    const std::size_t n = static_cast<std::size_t>(std::floor(upto - t.exponent)) + 1;
    const series::Series h = quotient_series(g, n, static_cast<int>(n) - 1);
    const series::Series s =
        series::multiply(series::power(h, t.exponent), derivative_series(g, n));
    for (std::size_t k = 0; k < n; ++k)
      out.push_back({t.exponent + static_cast<double>(k), 0, t.coefficient * s[k]});
  }
  return SingularExpansion::merged(std::move(out), e.radius);
}

GenIntegrand change_variables(const GenIntegrand& f, const SmoothMap& g) {
  if (!std::isinf(f.upper))
    throw NumericError("genquad", ErrorCode::unsupported,
                       "change of variables needs an infinite upper limit");
  GenIntegrand out;
  const RealFunction fe = f.evaluate, gg = g.g, dg = g.dg;
  out.evaluate = [fe, gg, dg](double u) { return fe(gg(u)) * dg(u); };
  out.expansion = transform_expansion(f.expansion, g, -1.0 + kDelta);
  out.upper = f.upper;
  out.tail = f.tail;
  if (f.tail.kind == TailKind::exponential) out.tail.rate = f.tail.rate * g.taylor[1];

  // Series part of P_f(g(u)) g'(u) beyond the new subtraction set.
  std::vector<SingularTerm> extra;
  for (const auto& t : f.expansion.subtracted()) {
    const series::Series h = quotient_series(g, kMapSeriesTerms, kMapSeriesTerms - 1);
    const series::Series s = series::multiply(series::power(h, t.exponent),
                                              derivative_series(g, kMapSeriesTerms));
    for (std::size_t k = 0; k < kMapSeriesTerms; ++k) {
      const SingularTerm m{t.exponent + static_cast<double>(k), 0, t.coefficient * s[k]};
      if (!in_omega(m)) extra.push_back(m);
    }
  }
  const std::vector<SingularTerm> omega_f = f.expansion.subtracted();
  const GenIntegrand base = f;
  out.remainder = [base, omega_f, extra, gg, dg](double u) {
    const double x = gg(u);
    double rem;
    if (base.remainder && x <= base.remainder_radius)
      rem = base.remainder(x);
    else
      rem = base.evaluate(x) - evaluate_terms(omega_f, x);
    return rem * dg(u) + evaluate_terms(extra, u);
  };
  out.remainder_radius = 0.3;
  out.name = f.name + " via " + g.name;
  return out;
}

CheckPair change_of_var_check(const GenIntegrand& f, const SmoothMap& g, const GenOptions& opts) {
  CheckPair c;
  c.lhs = gen_integrate(change_variables(f, g), 1.0, opts).value -
          gen_integrate(f, 1.0, opts).value;
  c.rhs = change_of_var_correction(f.expansion, g);
  return c;
}

GenIntegrand power_exponential(double s, double rate, double scale) {
  if (!(rate > 0.0)) throw NumericError("genquad", ErrorCode::domain, "rate must be positive");
  GenIntegrand f;
  f.evaluate = [s, rate, scale](double r) { return scale * std::pow(r, s - 1.0) * std::exp(-rate * r); };
  std::vector<SingularTerm> terms;
  double c = scale;
  for (int n = 0; n < 48; ++n) {
    terms.push_back({s - 1.0 + n, 0, c});
    c *= -rate / (n + 1);
  }
  f.expansion = SingularExpansion::merged(terms, 1.0 / rate);
  const std::vector<SingularTerm> all = f.expansion.terms;
  f.remainder = [all](double r) {
    double v = 0.0;
    for (const auto& t : all)
      if (!in_omega(t)) v += term_value(t, r);
    return v;
  };
  f.remainder_radius = 2.0 / rate;
  f.tail = {TailKind::exponential, rate};
  std::ostringstream os;
  os << "r^" << (s - 1.0) << " exp(-" << rate << " r)";
  f.name = os.str();
  return f;
}

}  // namespace gint::genquad
