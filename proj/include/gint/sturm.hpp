#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gint/extrapolation.hpp"
#include "gint/quad.hpp"

namespace gint::sturm {

using RealFunction = std::function<double(double)>;

/// C f = -rho^{-1} ((p f')' + q f) on ]a, b[, paired by <f|g> = int f g rho.
struct SturmLiouvilleSpec {
  RealFunction p, q, rho;
  double a = 0.0;
  double b = std::numeric_limits<double>::infinity();
  std::string name;
  /// Integrand decays like a power at an infinite endpoint (Gegenbauer Z);
  /// otherwise exponential decay is assumed.
  bool power_tail = false;
};

struct Eigenpair {
  RealFunction f;
  RealFunction df;  // optional analytic derivative
  double energy = 0.0;
};

/// Bessel operator: p = 2r, q = -2 alpha^2 / r, rho = 2r on ]0, inf[.
SturmLiouvilleSpec bessel_spec(double alpha);
/// Gegenbauer operator on ]-1, 1[: p = 2 (1-w^2)^{alpha+1}, rho = 2 (1-w^2)^alpha,
/// written in the shifted coordinate t = 1 + w in ]0, 2[.
SturmLiouvilleSpec gegenbauer_spec_interval(double alpha);
/// Gegenbauer operator on ]1, inf[: p = -2 (w^2-1)^{alpha+1}, rho = 2 (w^2-1)^alpha,
/// written in the shifted coordinate u = w - 1 in ]0, inf[.
SturmLiouvilleSpec gegenbauer_spec_half_line(double alpha);

/// K_alpha(b r), energy -b^2.
Eigenpair bessel_eigenpair(double alpha, double b);
/// S_{alpha, lambda} as a function of t = 1 + w, energy lambda^2 - (alpha+1/2)^2
/// (lambda real or imaginary).
Eigenpair gegenbauer_s_eigenpair(double alpha, std::complex<double> lambda);
/// Z_{alpha, lambda} as a function of u = w - 1, energy lambda^2 - (alpha+1/2)^2.
Eigenpair gegenbauer_z_eigenpair(double alpha, double lambda);

/// -rho^{-1}((p f')' + q f) at r. h = 0 selects 1e-5 max(1, |r|).
/// With df supplied, (p f')' is a central difference of p df.
double apply_operator(const SturmLiouvilleSpec& spec, const RealFunction& f, double r,
                      double h = 0.0, const RealFunction& df = {});

/// W(r) = f1 p f2' - f1' p f2.
double wronskian(const SturmLiouvilleSpec& spec, const Eigenpair& f1, const Eigenpair& f2,
                 double r, double h = 0.0);

struct GreenOptions {
  quad::Options quad{1e-11, 0.0, 4000};
  double endpoint_offset = 0.01;  // first sample distance from a finite endpoint
  int limit_terms = 12;
  double far_start = 4.0;         // first sample for an infinite endpoint
  double limit_rel_tol = 1e-7;
};

struct GreenCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double w_lower = 0.0;  // W(a+)
  double w_upper = 0.0;  // W(b-)
  double quad_error = 0.0;
};

/// lhs = int f1 f2 rho over ]a, b[; rhs = (W(b-) - W(a+)) / (E1 - E2).
GreenCheck greens_identity_check(const SturmLiouvilleSpec& spec, const Eigenpair& f1,
                                 const Eigenpair& f2, const GreenOptions& opts = {});

/// Just the left-hand side (direct quadrature of f1 f2 rho).
quad::Result pairing_integral(const SturmLiouvilleSpec& spec, const RealFunction& f1,
                              const RealFunction& f2, const quad::Options& opts = {});

/// Limit of W at an endpoint of the spec's interval (lower = true for a+).
extrap::Estimate boundary_wronskian(const SturmLiouvilleSpec& spec, const Eigenpair& f1,
                                    const Eigenpair& f2, bool lower,
                                    const GreenOptions& opts = {});

using EigenFamily = std::function<Eigenpair(double)>;

struct DiagonalOptions {
  GreenOptions green;
  double first_step = 1e-2;
  int terms = 6;
};

/// <f|f> as the t2 -> t1 limit of the Green's-identity right-hand side for a
/// family of eigenpairs parametrized by t, extrapolated in (t2 - t1)^2 from
/// symmetric pairs t1 +- delta.
extrap::Estimate diagonal_integral(const SturmLiouvilleSpec& spec, const EigenFamily& family,
                                   double t1, const DiagonalOptions& opts = {});

}  // namespace gint::sturm
