#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gint/error.hpp"
#include "gint/genquad.hpp"
#include "gint/series.hpp"
#include "gint/specfun.hpp"

namespace gint::genquad {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_integer(double x) { return x == std::round(x); }

// ------------------------------------------------------------------ Bessel

// Terms of K_nu(a r) in powers of r (log_power <= 1), k < depth per branch.
std::vector<SingularTerm> bessel_k_terms(double nu, double a, int depth) {
  nu = std::abs(nu);
  std::vector<SingularTerm> out;
  const double h = 0.5 * a;
  const double lh = std::log(h);
  if (!is_integer(nu)) {
    const double pref = kPi / (2.0 * std::sin(nu * kPi));
    for (int k = 0; k < depth; ++k) {
      const double lf = std::lgamma(k + 1.0);
      // I_{-nu}
      out.push_back({2.0 * k - nu, 0,
                     pref * std::exp((2.0 * k - nu) * lh - lf) * specfun::rgamma(k - nu + 1.0)});
      out.push_back({2.0 * k + nu, 0,
                     -pref * std::exp((2.0 * k + nu) * lh - lf) * specfun::rgamma(k + nu + 1.0)});
    }
    return out;
  }
  const int n = static_cast<int>(nu);
  // 1/2 (x/2)^{-n} sum_{k<n} (n-k-1)!/k! (-x^2/4)^k
  for (int k = 0; k < n; ++k) {
    const double c = 0.5 * std::exp(std::lgamma(n - k + 0.0) - std::lgamma(k + 1.0) +
                                    (2.0 * k - n) * lh) *
                     (k % 2 == 0 ? 1.0 : -1.0);
    out.push_back({2.0 * k - n, 0, c});
  }
  const double sgn_log = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  for (int k = 0; k < depth; ++k) {
    const double e = 2.0 * k + n;
    const double base = std::exp(e * lh - std::lgamma(k + 1.0) - std::lgamma(n + k + 1.0));
    // (-1)^{n+1} (ln r + ln(a/2)) I_n
    out.push_back({e, 1, sgn_log * base});
    out.push_back({e, 0, sgn_log * base * lh});
    // (-1)^n 1/2 (psi(k+1) + psi(n+k+1)) (x/2)^{2k+n} / (k! (n+k)!)
    out.push_back(
        {e, 0, -sgn_log * 0.5 * base * (specfun::digamma(k + 1.0) + specfun::digamma(n + k + 1.0))});
  }
  return out;
}

double k_product(double alpha, double a, double b, double r) {
  const double x = a * r, y = b * r;
  if (x + y < 2.0) return specfun::bessel_k(alpha, x) * specfun::bessel_k(alpha, y);
  return specfun::bessel_k_scaled(alpha, x) * specfun::bessel_k_scaled(alpha, y) *
         std::exp(-(x + y));
}

// ------------------------------------------------------------------ Gegenbauer

// c F~(a, b; c; s u) coefficients in u: term_j = c_j u^j with the regularized
// Gauss series, P(j) = (a+j)(b+j) supplied as a callback (real for the
// conjugate-pair and real cases used here).
template <class P>
series::Series gauss_coefficients(double log_c, int sign, double c, double s, const P& pj,
                                  int n) {
  series::Series out(n, 0.0);
  int sg = 1;
  double t = sign * std::exp(log_c - specfun::log_abs_gamma(c, &sg));
  t *= sg;
  for (int j = 0; j < n; ++j) {
    out[j] = t;
    t *= pj(j) / ((c + j) * (j + 1.0)) * s;
  }
  return out;
}

struct Branches {
  series::Series a_hat;  // coefficient series of u^{-alpha}
  series::Series b_hat;  // coefficient series of u^0
};

// S_{alpha, i beta} at w = u/2 - 1.
Branches s_branches(double alpha, double beta, double log_scale, int n) {
  const double sin_pa = std::sin(kPi * alpha);
  const int ss = sin_pa > 0 ? 1 : -1;
  const double log_sin = std::log(std::abs(sin_pa));
  const double pb = std::abs(kPi * beta);
  const double log_cosh = pb + std::log1p(std::exp(-2.0 * pb)) - std::numbers::ln2;
  Branches br;
  br.b_hat = gauss_coefficients(
      log_scale + log_cosh - log_sin, -ss, 1.0 + alpha, 0.25,
      [&](int j) { return (0.5 + alpha + j) * (0.5 + alpha + j) + beta * beta; }, n);
  br.a_hat = gauss_coefficients(
      log_scale + std::log(kPi) - log_sin - specfun::log_abs_gamma_sq(0.5 + alpha, beta) +
          alpha * std::log(4.0),
      ss, 1.0 - alpha, 0.25, [&](int j) { return (0.5 + j) * (0.5 + j) + beta * beta; }, n);
  return br;
}

// Z_{alpha, lambda} at w = 1 + u/2, v = u/4:
//   Z = v^{-a} A(v) + (1+v)^{-a} B(v),
//   A = K F~(1/2+l, 1/2-l; 1-a; -v) / Gamma(1/2+l+a),
//   B = -K F~(1/2+l, 1/2-l; 1+a; -v) / Gamma(1/2+l-a),  K = 2^{l-1/2-a} sqrt(pi)/sin(pi a).
Branches z_branches(double alpha, double lambda, double log_scale, int n) {
  const double sin_pa = std::sin(kPi * alpha);
  const int ss = sin_pa > 0 ? 1 : -1;
  const double log_k = (lambda - 0.5 - alpha) * std::numbers::ln2 + 0.5 * std::log(kPi) -
                       std::log(std::abs(sin_pa)) + log_scale;
  auto pj = [&](int j) { return (0.5 + lambda + j) * (0.5 - lambda + j); };
  Branches br;
  br.a_hat.assign(n, 0.0);
  br.b_hat.assign(n, 0.0);
  const double g1 = 0.5 + lambda + alpha, g2 = 0.5 + lambda - alpha;
  if (!(g1 <= 0.0 && is_integer(g1))) {
    int sg = 1;
    const double lg = specfun::log_abs_gamma(g1, &sg);
    br.a_hat = gauss_coefficients(log_k - lg + alpha * std::log(4.0), ss * sg, 1.0 - alpha,
                                  -0.25, pj, n);
  }
  if (!(g2 <= 0.0 && is_integer(g2))) {
    int sg = 1;
    const double lg = specfun::log_abs_gamma(g2, &sg);
    br.b_hat = series::multiply(gauss_coefficients(log_k - lg, -ss * sg, 1.0 + alpha, -0.25, pj, n),
                                series::binomial(0.25, -alpha, n));
  }
  return br;
}

Branches branches(GegenbauerKind kind, double alpha, double l, double log_scale, int n) {
  return kind == GegenbauerKind::S ? s_branches(alpha, l, log_scale, n)
                                   : z_branches(alpha, l, log_scale, n);
}

void check_gegenbauer_args(GegenbauerKind kind, double alpha, double l1, double l2) {
  if (!(alpha > -1.0))
    throw NumericError("genquad", ErrorCode::domain, "Gegenbauer bilinear needs alpha > -1");
  if (is_integer(alpha) && alpha != 0.0)
    throw NumericError("genquad", ErrorCode::ill_conditioned,
                       "Gegenbauer endpoint expansion is not implemented for integer alpha != 0");
  if (kind == GegenbauerKind::Z && (!(l1 > 0.0) || !(l2 > 0.0)))
    throw NumericError("genquad", ErrorCode::domain, "Z bilinear needs positive degrees");
}

}  // namespace

// ------------------------------------------------------------------ Bessel

SingularExpansion expansion_from_bessel_product(double alpha, double a, double b, int depth) {
  if (!(a > 0.0) || !(b > 0.0))
    throw NumericError("genquad", ErrorCode::domain, "Macdonald bilinear needs a, b > 0");
  const double gap = std::abs(alpha - std::round(alpha));
  if (gap > 0.0 && gap < 1e-8)
    throw NumericError("genquad", ErrorCode::ill_conditioned,
                       "alpha is within 1e-8 of an integer; use the integer order");
  const auto ka = bessel_k_terms(alpha, a, depth);
  const auto kb = bessel_k_terms(alpha, b, depth);
  std::vector<SingularTerm> out;
  out.reserve(ka.size() * kb.size());
  for (const auto& x : ka)
    for (const auto& y : kb)
      out.push_back({x.exponent + y.exponent + 1.0, x.log_power + y.log_power,
                     2.0 * x.coefficient * y.coefficient});
  return SingularExpansion::merged(std::move(out), 2.0 / std::max(a, b));
}

GenIntegrand bessel_product_integrand(double alpha, double a, double b) {
  GenIntegrand f;
  f.expansion = expansion_from_bessel_product(alpha, a, b);
  f.evaluate = [alpha, a, b](double r) { return 2.0 * r * k_product(alpha, a, b, r); };
  std::vector<SingularTerm> rest;
  for (const auto& t : f.expansion.terms)
    if (!(t.log_power == 0 && t.exponent <= -1.0 + kDelta)) rest.push_back(t);
  f.remainder = [rest](double r) { return evaluate_terms(rest, r); };
  f.remainder_radius = std::min(1.0, 2.0 / std::max(a, b));
  f.tail = {TailKind::exponential, a + b};
  std::ostringstream os;
  os << "K_" << alpha << "(" << a << " r) K_" << alpha << "(" << b << " r) 2r";
  f.name = os.str();
  return f;
}

GenResult gen_bilinear_macdonald(double alpha, double a, double b, const GenOptions& opts) {
  return gen_integrate(bessel_product_integrand(alpha, a, b), 1.0, opts);
}

// ------------------------------------------------------------------ Gegenbauer

SingularExpansion gegenbauer_expansion(GegenbauerKind kind, double alpha, double l1, double l2,
                                       double log_scale, int depth) {
  check_gegenbauer_args(kind, alpha, l1, l2);
  // alpha = 0: only logarithmic, integrable singularities; nothing to subtract.
  if (alpha == 0.0) return SingularExpansion::merged({}, 4.0);
  const int n = depth;
  const Branches f1 = branches(kind, alpha, l1, log_scale, n);
  const Branches f2 = branches(kind, alpha, l2, log_scale, n);
  const series::Series weight =
      series::binomial(kind == GegenbauerKind::S ? -0.25 : 0.25, alpha, n);
  const series::Series aa = series::multiply(series::multiply(f1.a_hat, f2.a_hat), weight);
  series::Series ab = series::multiply(f1.a_hat, f2.b_hat);
  const series::Series ba = series::multiply(f1.b_hat, f2.a_hat);
  for (int j = 0; j < n; ++j) ab[j] += ba[j];
  ab = series::multiply(ab, weight);
  const series::Series bb = series::multiply(series::multiply(f1.b_hat, f2.b_hat), weight);
  std::vector<SingularTerm> out;
  for (int j = 0; j < n; ++j) {
    out.push_back({j - alpha, 0, aa[j]});
    out.push_back({static_cast<double>(j), 0, ab[j]});
    out.push_back({j + alpha, 0, bb[j]});
  }
  return SingularExpansion::merged(std::move(out), 4.0);
}

GenIntegrand gegenbauer_integrand(GegenbauerKind kind, double alpha, double l1, double l2,
                                  double log_scale) {
  check_gegenbauer_args(kind, alpha, l1, l2);
  GenIntegrand f;
  f.expansion = gegenbauer_expansion(kind, alpha, l1, l2, log_scale);
  std::ostringstream os;
  if (kind == GegenbauerKind::S) {
    const specfun::cplx b1(0.0, l1), b2(0.0, l2);
    f.evaluate = [=](double u) {
      const double t = 0.5 * u;
      return specfun::gegenbauer_s_offset(alpha, b1, t, log_scale) *
             specfun::gegenbauer_s_offset(alpha, b2, t, log_scale) *
             std::pow(u * (4.0 - u) * 0.25, alpha);
    };
    f.upper = 4.0;
    f.tail = {TailKind::finite, 0.0};
    os << "S_" << alpha << ",i" << l1 << " S_" << alpha << ",i" << l2;
  } else {
    f.evaluate = [=](double u) {
      const double d = 0.5 * u;
      return specfun::gegenbauer_z_offset(alpha, l1, d, log_scale) *
             specfun::gegenbauer_z_offset(alpha, l2, d, log_scale) *
             std::pow(u * (1.0 + 0.25 * u), alpha);
    };
    f.tail = {TailKind::power, 1.0 + l1 + l2};
    os << "Z_" << alpha << "," << l1 << " Z_" << alpha << "," << l2;
  }
  f.name = os.str();

  // Remainder from the regular part of the series: use it where the last
  // retained terms are negligible and the partial sums do not cancel.
  std::vector<SingularTerm> rest;
  double last_exponent = -1e300;
  for (const auto& t : f.expansion.terms) {
    if (!(t.log_power == 0 && t.exponent <= -1.0 + kDelta)) rest.push_back(t);
    last_exponent = std::max(last_exponent, t.exponent);
  }
  double radius = 0.0;
  for (double u = 2.0; u > 1e-12; u *= 0.5) {
    double sum = 0.0, abs_sum = 0.0, tail = 0.0;
    for (const auto& t : rest) {
      const double v = t.coefficient * std::pow(u, t.exponent);
      sum += v;
      abs_sum += std::abs(v);
      if (t.exponent > last_exponent - 3.0) tail += std::abs(v);
    }
    if (tail <= 1e-17 * abs_sum && abs_sum <= 1e2 * std::abs(sum)) {
      radius = u;
      break;
    }
  }
  if (radius > 0.0 && !rest.empty()) {
    f.remainder = [rest](double u) { return evaluate_terms(rest, u); };
    f.remainder_radius = radius;
  }
  return f;
}

GenResult gen_bilinear_gegenbauer(GegenbauerKind kind, double alpha, double l1, double l2,
                                  double log_scale, const GenOptions& opts) {
  const GenIntegrand f = gegenbauer_integrand(kind, alpha, l1, l2, log_scale);
  const double split = f.remainder ? std::min(1.0, f.remainder_radius) : 1.0;
  return gen_integrate(f, split, opts);
}

// ------------------------------------------------------------------ fit

FitResult fit_expansion(const RealFunction& f, const std::vector<double>& exponents,
                        const std::vector<double>& probes) {
  const auto m = static_cast<Eigen::Index>(probes.size());
  const auto n = static_cast<Eigen::Index>(exponents.size());
  if (m < n)
    throw NumericError("genquad", ErrorCode::domain, "fit needs at least as many probes as terms");
  Eigen::MatrixXd a(m, n);
  Eigen::VectorXd y(m), w(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double fu = f(probes[i]);
    w(i) = fu != 0.0 ? 1.0 / std::abs(fu) : 1.0;
    y(i) = fu * w(i);
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = std::pow(probes[i], exponents[j]) * w(i);
  }
  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < n; ++j) a.col(j) /= scale(j);
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  FitResult r;
  r.exponents = exponents;
  for (Eigen::Index j = 0; j < n; ++j) r.coefficients.push_back(c(j) / scale(j));
  r.residual = (a * c - y).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace gint::genquad
