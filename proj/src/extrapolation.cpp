#include "gint/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gint/error.hpp"

namespace gint::extrap {

Estimate richardson(std::span<const double> steps, std::span<const double> values,
                    double order) {
  const std::size_t n = values.size();
  if (n == 0 || steps.size() != n)
    throw NumericError("extrapolation", ErrorCode::domain, "step/value size mismatch");
  Estimate est;
  est.samples.assign(values.begin(), values.end());
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(std::abs(steps[i]), order);

  // t[i][j]: extrapolation using samples i-j..i
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  est.value = values[0];
  est.error = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    t[i][0] = values[i];
    for (std::size_t j = 1; j <= i; ++j) {
      const double num = x[i - j], den = x[i];
      t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) * den / (num - den);
      const double err = std::max(std::abs(t[i][j] - t[i][j - 1]),
                                  std::abs(t[i][j] - t[i - 1][j - 1]));
      if (err <= est.error) {
        est.error = err;
        est.value = t[i][j];
      }
    }
    est.extrapolants.push_back(t[i][i]);
  }
  if (n == 1) est.error = std::abs(values[0]);
  return est;
}

Estimate wynn_epsilon(std::span<const double> sequence) {
  const std::size_t n = sequence.size();
  Estimate est;
  est.samples.assign(sequence.begin(), sequence.end());
  if (n == 0) throw NumericError("extrapolation", ErrorCode::domain, "empty sequence");
  est.value = sequence.back();
  est.error = n > 1 ? std::abs(sequence[n - 1] - sequence[n - 2])
                    : std::numeric_limits<double>::infinity();
  // prev2 = column k-1, prev = column k.
  std::vector<double> prev2(n + 1, 0.0);
  std::vector<double> prev(sequence.begin(), sequence.end());
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(prev.size() - 1);
    bool broken = false;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      const double diff = prev[i + 1] - prev[i];
      const double scale = std::max(std::abs(prev[i + 1]), std::abs(prev[i]));
      if (std::abs(diff) <= 4.0 * std::numeric_limits<double>::epsilon() * scale ||
          diff == 0.0) {
        broken = true;
        break;
      }
      next[i] = prev2[i + 1] + 1.0 / diff;
    }
    if (broken) break;
    if (k % 2 == 0) {
      // even column: candidate limits
      for (std::size_t i = 0; i < next.size(); ++i) est.extrapolants.push_back(next[i]);
      const double cand = next.back();
      double err = std::numeric_limits<double>::infinity();
      if (next.size() >= 2) err = std::abs(next.back() - next[next.size() - 2]);
      if (next.size() >= 2 && err <= est.error) {
        est.error = err;
        est.value = cand;
      }
    }
    prev2 = prev;
    prev = std::move(next);
    if (prev.size() < 2) break;
  }
  return est;
}

Estimate endpoint_limit(const std::function<double(double)>& f, double endpoint, double offset,
                        int direction, int terms) {
  std::vector<double> seq;
  seq.reserve(terms);
  double h = offset;
  for (int i = 0; i < terms; ++i, h *= 0.5) seq.push_back(f(endpoint + direction * h));
  return wynn_epsilon(seq);
}

Estimate limit_at_infinity(const std::function<double(double)>& f, double start, int terms) {
  std::vector<double> seq;
  double r = start;
  for (int i = 0; i < terms; ++i, r *= 2.0) seq.push_back(f(r));
  return wynn_epsilon(seq);
}

Estimate limit_at_point(const std::function<double(double)>& f, double x0, double h0,
                        bool symmetric, int terms) {
  std::vector<double> steps, vals;
  double h = h0;
  for (int i = 0; i < terms; ++i, h *= 0.5) {
    steps.push_back(h);
    vals.push_back(symmetric ? 0.5 * (f(x0 + h) + f(x0 - h)) : f(x0 + h));
  }
  return richardson(steps, vals, symmetric ? 2.0 : 1.0);
}

void require_converged(const Estimate& e, double rel_tol, double abs_floor, const char* what) {
  if (std::isfinite(e.value) && e.error <= rel_tol * std::max(std::abs(e.value), abs_floor))
    return;
  std::ostringstream os;
  os.precision(17);
  os << what << ": extrapolation did not converge (value " << e.value << ", error " << e.error
     << "; last extrapolants";
  const auto& ex = e.extrapolants.empty() ? e.samples : e.extrapolants;
  for (std::size_t i = ex.size() >= 3 ? ex.size() - 3 : 0; i < ex.size(); ++i) os << ' ' << ex[i];
  os << ')';
  throw NumericError("extrapolation", ErrorCode::convergence, os.str());
}

}  // namespace gint::extrap
