#pragma once

#include <limits>
#include <string>
#include <vector>

namespace gint::pointgreen {

enum class GeometryKind { euclidean, hyperbolic, spherical };

/// Resolvent of (L + beta^2) with L = -Laplace + shift():
/// shift = 0 (euclidean), -((d-1)/2)^2 (hyperbolic), +((d-1)/2)^2 (spherical).
struct Geometry {
  GeometryKind kind = GeometryKind::euclidean;
  int d = 3;

  double shift() const;
  std::string name() const;
};

/// Ambient coordinates: length d (euclidean) or d+1 (curved models, with
/// [x|x] = x0^2 - sum xi^2 = 1, x0 >= 1 for hyperbolic and (x|x) = 1 for
/// spherical). Construction checks the constraint to 1e-12 and renormalizes.
class SpacePoint {
 public:
  SpacePoint(Geometry g, std::vector<double> coords);

  /// Origin / (1, 0, ..., 0).
  static SpacePoint base(Geometry g);
  /// Point at geodesic distance r from the base point along unit direction
  /// `dir` (length d; default e1).
  static SpacePoint polar(Geometry g, double r, std::vector<double> dir = {});

  const Geometry& geometry() const { return g_; }
  const std::vector<double>& coords() const { return x_; }

 private:
  Geometry g_;
  std::vector<double> x_;
};

/// euclidean |x-y|, hyperbolic [x|y] = cosh r, spherical (x|y) = cos r.
double invariant_argument(const SpacePoint& x, const SpacePoint& y);
/// Geodesic distance.
double distance(const SpacePoint& x, const SpacePoint& y);

/// Free Green function as a function of the geodesic distance r.
double green_radial(const Geometry& g, double beta, double r);
double green_free(const Geometry& g, double beta, const SpacePoint& x, const SpacePoint& y);

/// Euclidean Sigma_d(beta^2): the table values for d <= 3, the general
/// odd/even formula otherwise.
double sigma(int d, double beta);
/// The general odd/even-d formula for every d (differs from the table at
/// d = 2 by (2 + 2 gamma_E - 2 ln 2)/(4 pi)).
double sigma_general(int d, double beta);

struct DerivativeCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_diff() const;
};

/// lhs: d Sigma / d rho by extrapolated central differences (rho = beta^2);
/// rhs: prefactor times the generalized K_{d/2-1}(beta r)^2 2r integral.
DerivativeCheck sigma_derivative_check(int d, double beta);

/// d Sigma / d rho on hyperbolic or spherical space: generalized integral of
/// the squared kernel over the volume measure.
double sigma_derivative_curved(const Geometry& g, double beta);
/// Sigma(beta^2) on curved space, normalized by Sigma(rho = 1) = 0.
double sigma_numeric_curved(const Geometry& g, double beta);

inline constexpr double kNoCoupling = std::numeric_limits<double>::infinity();

struct KreinKernelSpec {
  Geometry geometry;
  double beta = 1.0;
  double gamma = kNoCoupling;  // infinity: free kernel
};

/// Sigma used by krein_green for this geometry.
double krein_sigma(const KreinKernelSpec& s);

/// G(x,y) + G(x,0) G(0,y) / (gamma + Sigma).
double krein_green(const KreinKernelSpec& s, const SpacePoint& x, const SpacePoint& y);

/// (-Laplace_x + beta^2 + shift) applied to krein_green(., y) at x by central
/// differences with step h (ambient coordinates for euclidean, geodesic
/// radial form around each source point for curved spaces).
double pde_residual_check(const KreinKernelSpec& s, const SpacePoint& x, const SpacePoint& y,
                          double h);

/// d=1: lhs = d/d rho G^gamma(x, y), rhs = -int G^gamma(x, z) G^gamma(z, y) dz.
DerivativeCheck resolvent_derivative_check_1d(double beta, double gamma, double x, double y);

}  // namespace gint::pointgreen
