#include "gint/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "gint/error.hpp"

namespace gint::quad {
namespace {

constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208064227250, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for kNodes[1], kNodes[3], ..., kNodes[9].
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

double checked_eval(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << "integrand is not finite at x = " << x;
    throw NumericError("quad", ErrorCode::domain, os.str());
  }
  return y;
}

struct Segment {
  double a, b;
  Result r;
  bool operator<(const Segment& o) const { return r.error < o.r.error; }
};

double tolerance(const Options& opts, double value) {
  return std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
}

}  // namespace

Result gauss_kronrod21(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked_eval(f, center);
  double kronrod = kKronrodWeights[10] * fc;
  double gauss = 0.0;
  double resabs = std::abs(kronrod);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    f1[j] = checked_eval(f, center - dx);
    f2[j] = checked_eval(f, center + dx);
    kronrod += kKronrodWeights[j] * (f1[j] + f2[j]);
    resabs += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double resasc = kKronrodWeights[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  Result r;
  r.value = kronrod * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);
  r.error = err;
  r.evaluations = 21;
  return r;
}

Result integrate(const RealFunction& f, double a, double b, const Options& opts) {
  if (a == b) return {};
  if (a > b) {
    Result r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Segment> heap;
  Result first = gauss_kronrod21(f, a, b);
  heap.push({a, b, first});
  double total = first.value;
  double total_err = first.error;
  long evals = first.evaluations;
  int subdivisions = 0;
  bool converged = true;
  while (total_err > tolerance(opts, total)) {
    if (subdivisions >= opts.max_subdivisions) {
      converged = false;
      break;
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b ||
        (worst.b - worst.a) < 8.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      converged = false;
      break;
    }
    heap.pop();
    Result left = gauss_kronrod21(f, worst.a, mid);
    Result right = gauss_kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.r.value;
    total_err += left.error + right.error - worst.r.error;
    evals += 42;
    heap.push({worst.a, mid, left});
    heap.push({mid, worst.b, right});
    ++subdivisions;
  }
  // Re-sum to avoid drift from incremental updates.
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().r.value;
    err += heap.top().r.error;
    heap.pop();
  }
  Result r;
  r.value = value;
  r.error = err;
  r.evaluations = evals;
  r.converged = converged;
  return r;
}

Result integrate_checked(const RealFunction& f, double a, double b, const Options& opts) {
  Result r = integrate(f, a, b, opts);
  if (!r.converged) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] reached error " << r.error
       << " (requested rel " << opts.rel_tol << ", abs " << opts.abs_tol << ")";
    throw NumericError("quad", ErrorCode::convergence, os.str());
  }
  return r;
}

Result integrate_toward_endpoint(const RealFunction& f, double a, double b, double endpoint,
                                 const Options& opts,
                                 const std::function<double(double, double)>& noise) {
  if (endpoint != a && endpoint != b)
    throw NumericError("quad", ErrorCode::domain, "endpoint must be a or b");
  const double length = b - a;
  const double sign = endpoint == a ? 1.0 : -1.0;
  auto point = [&](double dist) { return endpoint + sign * dist; };

  Result total;
  std::vector<double> panels;
  Options panel_opts = opts;
  constexpr int kMinPanels = 6;
  constexpr int kMaxPanels = 1100;
  double last_tail = NAN;
  double last_reliable_ratio = NAN;
  int zero_run = 0;
  double outer = length;
  for (int k = 0; k < kMaxPanels; ++k) {
    const double inner = 0.5 * outer;
    const double lo = point(inner), hi = point(outer);
    if (std::abs(lo - hi) <= 4.0 * kEps * std::max(std::abs(endpoint), std::abs(length))) {
      // Panels no longer resolvable; extrapolate from the last trusted ratio.
      if (std::isfinite(last_reliable_ratio) && !panels.empty()) {
        const double tail = panels.back() * last_reliable_ratio / (1.0 - last_reliable_ratio);
        total.value += tail;
        total.error += std::abs(tail);
      }
      return total;
    }
    panel_opts.abs_tol = std::max(opts.abs_tol, 0.01 * opts.rel_tol * std::abs(total.value));
    Result p = integrate(f, std::min(lo, hi), std::max(lo, hi), panel_opts);
    // Panels near a nonzero endpoint see rounded arguments; a panel whose
    // error is already negligible for the total does not need to converge.
    if (!p.converged && p.error <= 0.1 * tolerance(opts, total.value + p.value)) p.converged = true;
    const double panel_noise = noise ? noise(inner, outer) : 0.0;
    if (noise && k >= 2 && std::abs(p.value) <= panel_noise) {
      // Remainder is below rounding noise: stop and extrapolate.
      if (std::isfinite(last_reliable_ratio)) {
        const double tail = panels.back() * last_reliable_ratio / (1.0 - last_reliable_ratio);
        total.value += tail;
        total.error += std::abs(tail) * 0.1 + panel_noise;
      } else {
        total.error += panel_noise;
      }
      return total;
    }
    total += p;
    panels.push_back(p.value);
    outer = inner;

    if (p.value == 0.0) {
      if (++zero_run >= 3 && k >= kMinPanels) return total;
      continue;
    }
    zero_run = 0;
    if (panels.size() < 2) continue;
    const double prev = panels[panels.size() - 2];
    const double ratio = prev != 0.0 ? p.value / prev : NAN;
    const bool geometric = std::isfinite(ratio) && ratio > 0.0 && ratio < 0.999;
    if (geometric) last_reliable_ratio = ratio;
    const double tail = geometric ? p.value * ratio / (1.0 - ratio) : NAN;
    const double tol = tolerance(opts, total.value);
    if (k >= kMinPanels) {
      if (std::abs(p.value) <= 0.01 * tol && (!geometric || std::abs(tail) <= 0.1 * tol)) {
        if (geometric) total.value += tail;
        total.error += geometric ? std::abs(tail) * 0.1 : std::abs(p.value);
        return total;
      }
      if (geometric && std::isfinite(last_tail) &&
          std::abs(total.value + tail - last_tail) <= 0.05 * tol) {
        total.error += std::abs(total.value + tail - last_tail);
        total.value += tail;
        return total;
      }
    }
    last_tail = total.value + tail;  // predicted limit
  }
  total.converged = false;
  return total;
}

Result integrate_to_infinity(const RealFunction& f, double a, double panel_width,
                             const Options& opts) {
  if (!(panel_width > 0.0))
    throw NumericError("quad", ErrorCode::domain, "panel width must be positive");
  Result total;
  double lo = a;
  double width = panel_width;
  int small_run = 0;
  Options panel_opts = opts;
  for (int k = 0; k < 400; ++k) {
    panel_opts.abs_tol = std::max(opts.abs_tol, 0.01 * opts.rel_tol * std::abs(total.value));
    const Result p = integrate(f, lo, lo + width, panel_opts);
    total += p;
    lo += width;
    if (k >= 8) width *= 1.5;
    const double tol = tolerance(opts, total.value);
    if (std::abs(p.value) <= 0.01 * tol) {
      if (++small_run >= 3) return total;
    } else {
      small_run = 0;
    }
    if (!std::isfinite(lo)) break;
  }
  total.converged = false;
  return total;
}

Result integrate_power_tail(const RealFunction& f, double a, const Options& opts) {
  if (!(a > 0.0))
    throw NumericError("quad", ErrorCode::domain, "power tail needs a positive lower limit");
  auto g = [&f](double t) { return f(1.0 / t) / (t * t); };
  return integrate_toward_endpoint(g, 0.0, 1.0 / a, 0.0, opts);
}

}  // namespace gint::quad
