#pragma once

#include <complex>
#include <string_view>

namespace gint::specfun {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Gamma family

double gamma(double x);
cplx gamma(cplx z);
/// log Gamma(z) up to a multiple of 2*pi*i in the imaginary part.
cplx log_gamma(cplx z);
/// 1/Gamma; exactly zero at the poles.
double rgamma(double x);
cplx rgamma(cplx z);
/// log|Gamma(x)| together with the sign of Gamma(x). Throws at poles.
double log_abs_gamma(double x, int* sign = nullptr);
/// log |Gamma(x + i y)|^2, evaluated in real arithmetic (no complex Gamma).
double log_abs_gamma_sq(double x, double y);
double digamma(double x);
/// Rising factorial z (z+1) ... (z+n-1); (z)_0 = 1.
cplx pochhammer(cplx z, int n);

enum class GammaKind { gamma, digamma, pochhammer };
/// Uniform entry point used by the CLI; `n` is only read for pochhammer.
cplx eval_gamma_family(GammaKind kind, cplx z, int n = 0);

// ---------------------------------------------------------------------------
// Macdonald function K_nu(x), x > 0, any real order (K_{-nu} = K_nu).

double bessel_k(double nu, double x);
/// exp(x) * K_nu(x); representable far beyond the range of bessel_k.
double bessel_k_scaled(double nu, double x);
/// d/dx K_nu(x).
double bessel_k_derivative(double nu, double x);

// ---------------------------------------------------------------------------
// Gegenbauer functions
//
//   S_{a,l}(w) = sum_j (1/2+a+l)_j (1/2+a-l)_j / (Gamma(a+1+j) j!) ((1-w)/2)^j
//   Z_{a,l}(w) = (w+1)^{-1/2-a-l} sum_j (1/2+l)_j (1/2+l+a)_j
//                  / (Gamma(l+1) (1+2l)_j j!) (2/(1+w))^j
//
// All evaluators take an optional log_scale: the returned value is
// exp(log_scale) times the function, so squares of very large or very
// small values can be formed without overflow.

enum class Route { automatic, series, whipple, connection };
std::string_view to_string(Route r);

struct GegenbauerConfig {
  double whipple_crossover = 1.5;  // Z: direct series for w >= crossover
  double series_tol = 1e-16;
  long max_terms = 6'000'000;
  double near_integer = 1e-3;      // connection formulas switch to an order stencil
  double max_condition = 1e3;      // reject routes losing more digits than this
  long cheap_terms = 2000;         // prefer the plain series below this cost
};

struct GegenbauerResult {
  double value = 0.0;
  Route route = Route::series;
  double condition = 1.0;  // sum|terms| / |sum|; digits lost ~ log10(condition)
  long terms = 0;
};

/// S_{alpha, lambda}(w), w in (-1, 3). lambda real or purely imaginary.
GegenbauerResult gegenbauer_s_eval(double alpha, cplx lambda, double w,
                                   double log_scale = 0.0, Route route = Route::automatic,
                                   const GegenbauerConfig& cfg = {});
double gegenbauer_s(double alpha, cplx lambda, double w, double log_scale = 0.0);
double gegenbauer_s_derivative(double alpha, cplx lambda, double w, double log_scale = 0.0);
/// S at w = t - 1, parametrized by the distance t = 1 + w to the singular
/// point -1 (keeps full relative accuracy as w -> -1).
double gegenbauer_s_offset(double alpha, cplx lambda, double t, double log_scale = 0.0);
double gegenbauer_s_offset_derivative(double alpha, cplx lambda, double t,
                                      double log_scale = 0.0);

/// Z_{alpha, lambda}(w), w > 1, real lambda > 0 (or any real lambda off the
/// poles of Gamma(lambda + 1)).
GegenbauerResult gegenbauer_z_eval(double alpha, double lambda, double w,
                                   double log_scale = 0.0, Route route = Route::automatic,
                                   const GegenbauerConfig& cfg = {});
double gegenbauer_z(double alpha, double lambda, double w, double log_scale = 0.0);
double gegenbauer_z_derivative(double alpha, double lambda, double w, double log_scale = 0.0);
/// Z at w = 1 + u, parametrized by u = w - 1 > 0.
double gegenbauer_z_offset(double alpha, double lambda, double u, double log_scale = 0.0);
double gegenbauer_z_offset_derivative(double alpha, double lambda, double u,
                                      double log_scale = 0.0);

/// Right-hand sides of the two Whipple transformations, for w > 1:
///   (w^2-1)^{-1/4-a/2-l/2} S_{l,a}(w/sqrt(w^2-1))   (equals Z_{a,l}(w))
///   (w^2-1)^{-1/4-a/2-l/2} Z_{l,a}(w/sqrt(w^2-1))   (equals S_{a,l}(w))
double whipple_z_from_s(double alpha, double lambda, double w);
double whipple_s_from_z(double alpha, double lambda, double w);

namespace detail {

struct SeriesSum {
  cplx value;
  double abs_sum = 0.0;
  long terms = 0;
};

/// sum_j (a)_j (b)_j / ((c)_j j!) z^j, or the regularized version with
/// Gamma(c + j) in place of (c)_j, times exp(log_scale). Requires |z| < 1.
SeriesSum hypergeometric_series(cplx a, cplx b, double c, double z, bool regularized,
                                double log_scale, double tol, long max_terms);

}  // namespace detail

}  // namespace gint::specfun
