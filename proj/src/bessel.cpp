// Macdonald function K_nu(x) for real order and positive argument.
//
// The order is split as nu = n + mu with |mu| <= 1/2. K_mu and K_{mu+1} are
// obtained from Temme's series for x < 2 and from Steed's continued fraction
// (Thompson-Barnett CF2) for x >= 2; forward recurrence in the order, which is
// stable for K, then reaches nu.

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gint/error.hpp"
#include "gint/specfun.hpp"

namespace gint::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-17;
constexpr int kMaxIter = 100000;

// Taylor coefficients of 1/Gamma(z) = sum_k c_k z^k (Abramowitz & Stegun 6.1.34).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015328606,
    -0.6558780715202538811,
    -0.0420026350340952355,
    0.1665386113822914895,
    -0.0421977345555443367,
    -0.0096219715278769736,
    0.0072189432466630995,
    -0.0011651675918590651,
    -0.0002152416741149510,
    0.0001280502823881162,
    -0.0000201348547807882,
    -0.0000012504934821427,
    0.0000011330272319817,
    -0.0000002056338416978,
    0.0000000061160951045,
    0.0000000050020076445,
    -0.0000000011812745705,
    0.0000000001043426712,
    0.0000000000077822634,
    -0.0000000000036968056,
    0.0000000000005100370,
    -0.0000000000000205833,
    -0.0000000000000053481,
    0.0000000000000012268,
    -0.0000000000000001181};

struct TemmeGammas {
  double gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  // With 1/Gamma(1+z) = sum_{k>=1} c_k z^{k-1}, the odd-k part is even in mu
  // and the even-k part is odd in mu.
  double gam2 = 0.0, gam1 = 0.0;
  const double mu2 = mu * mu;
  double p = 1.0;
  for (std::size_t k = 1; k <= kRecipGamma.size(); k += 2) {
    gam2 += kRecipGamma[k - 1] * p;
    if (k < kRecipGamma.size()) gam1 -= kRecipGamma[k] * p;
    p *= mu2;
  }
  TemmeGammas g{};
  g.gam1 = gam1;
  g.gam2 = gam2;
  g.gampl = gam2 - mu * gam1;
  g.gammi = gam2 + mu * gam1;
  return g;
}

struct KPair {
  double k_mu, k_mu1;
};

// K_mu(x), K_{mu+1}(x), |mu| <= 1/2; scaled by exp(x) when `scaled`.
KPair k_low_order(double mu, double x, bool scaled) {
  const double xi = 1.0 / x;
  const double mu2 = mu * mu;
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < 1e-15 ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter)
      throw NumericError("specfun", ErrorCode::precision, "Temme series for K did not converge");
    const double s = scaled ? std::exp(x) : 1.0;
    return {sum * s, sum1 * 2.0 * xi * s};
  }
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  if (i > kMaxIter)
    throw NumericError("specfun", ErrorCode::precision, "continued fraction for K did not converge");
  h = a1 * h;
  double kmu = std::sqrt(kPi / (2.0 * x)) / s;
  if (!scaled) kmu *= std::exp(-x);
  return {kmu, kmu * (mu + x + 0.5 - h) * xi};
}

KPair k_pair(double nu, double x, bool scaled) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "K_nu(x) needs x > 0, got " << x;
    throw NumericError("specfun", ErrorCode::domain, os.str());
  }
  nu = std::abs(nu);
  const int n = static_cast<int>(nu + 0.5);
  const double mu = nu - n;
  KPair kp = k_low_order(mu, x, scaled);
  const double xi2 = 2.0 / x;
  double km = kp.k_mu, k1 = kp.k_mu1;
  for (int i = 1; i <= n; ++i) {
    const double next = (mu + i) * xi2 * k1 + km;
    km = k1;
    k1 = next;
  }
  if (!std::isfinite(km) || !std::isfinite(k1))
    throw NumericError("specfun", ErrorCode::overflow, "K_nu(x) overflows");
  return {km, k1};
}

}  // namespace

double bessel_k(double nu, double x) {
  const double k = k_pair(nu, x, false).k_mu;
  if (k == 0.0)
    throw NumericError("specfun", ErrorCode::overflow,
                       "K_nu(x) underflows; use bessel_k_scaled");
  return k;
}

double bessel_k_scaled(double nu, double x) { return k_pair(nu, x, true).k_mu; }

double bessel_k_derivative(double nu, double x) {
  const KPair kp = k_pair(nu, x, false);
  return std::abs(nu) / x * kp.k_mu - kp.k_mu1;
}

}  // namespace gint::specfun
