#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gint::extrap {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  /// Raw sequence followed by the diagonal (or even-column) extrapolants.
  std::vector<double> samples;
  std::vector<double> extrapolants;
};

/// Polynomial extrapolation to h = 0 of values taken at step sizes h_i,
/// assuming an error expansion in powers of h^order (Neville tableau).
/// The returned value is the tableau entry with the smallest estimated
/// error along the diagonal.
Estimate richardson(std::span<const double> steps, std::span<const double> values,
                    double order);

/// Wynn epsilon (Shanks) acceleration of a sequence whose error is a sum of
/// geometric components with unknown ratios.
Estimate wynn_epsilon(std::span<const double> sequence);

/// lim_{r -> endpoint} f(r) sampled on r_n = endpoint + direction*offset*2^-n.
/// direction is +1 when approaching from above, -1 from below.
Estimate endpoint_limit(const std::function<double(double)>& f, double endpoint,
                        double offset, int direction, int terms = 8);

/// lim_{r -> inf} f(r) sampled on r_n = start * 2^n.
Estimate limit_at_infinity(const std::function<double(double)>& f, double start,
                           int terms = 8);

/// lim_{h -> 0} of f(x0 + h). With symmetric = true the average
/// (f(x0+h) + f(x0-h))/2 is extrapolated in h^2; otherwise f(x0+h) in h.
/// Steps are h0 * 2^-k, k = 0..terms-1.
Estimate limit_at_point(const std::function<double(double)>& f, double x0, double h0,
                        bool symmetric = true, int terms = 6);

/// Throws NumericError(extrapolation, convergence) listing the last three
/// extrapolants when |error| exceeds tol * max(|value|, floor).
void require_converged(const Estimate& e, double rel_tol, double abs_floor,
                       const char* what);

}  // namespace gint::extrap
