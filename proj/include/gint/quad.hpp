#pragma once

#include <functional>
#include <limits>

namespace gint::quad {

using RealFunction = std::function<double(double)>;

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long evaluations = 0;
  bool converged = true;

  Result& operator+=(const Result& other) {
    value += other.value;
    error += other.error;
    evaluations += other.evaluations;
    converged = converged && other.converged;
    return *this;
  }
};

/// One 21-point Gauss-Kronrod rule on [a, b]; error is |K21 - G10|.
Result gauss_kronrod21(const RealFunction& f, double a, double b);

/// Globally adaptive Gauss-Kronrod on a finite interval (QUADPACK QAG
/// strategy: always bisect the interval with the largest error).
/// Does not throw on non-convergence; inspect Result::converged.
Result integrate(const RealFunction& f, double a, double b,
                 const Options& opts = {});

/// Same as integrate() but throws NumericError(quad, convergence) when the
/// requested tolerance is not met.
Result integrate_checked(const RealFunction& f, double a, double b,
                         const Options& opts = {});

/// Integral over [a, b] where the integrand may have an integrable
/// algebraic or logarithmic singularity at `endpoint` (a or b). The
/// interval is cut into geometric panels shrinking towards the endpoint;
/// once panel contributions decay geometrically the remaining tail is
/// summed as a geometric series.
///
/// `noise(width_from_endpoint)` may return an absolute bound on rounding
/// noise of a panel of that size; summation stops when panel values fall
/// below it (used for cancellation-prone finite-part remainders).
Result integrate_toward_endpoint(
    const RealFunction& f, double a, double b, double endpoint,
    const Options& opts = {},
    const std::function<double(double, double)>& noise = {});

/// Integral over [a, inf) of a decaying integrand. Panels of width
/// `panel_width` (growing geometrically after the first few) are summed
/// until contributions are negligible.
Result integrate_to_infinity(const RealFunction& f, double a,
                             double panel_width, const Options& opts = {});

/// Integral over [a, inf) of an integrand decaying like a power r^{-p},
/// p > 1, by the substitution t = 1/r.
Result integrate_power_tail(const RealFunction& f, double a,
                            const Options& opts = {});

}  // namespace gint::quad
