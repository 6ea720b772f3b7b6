#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "gint/error.hpp"
#include "gint/pointgreen.hpp"

using namespace gint::pointgreen;
using gint::NumericError;

namespace {

constexpr double kPi = std::numbers::pi;
double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST(Geometry, Shifts) {
  EXPECT_EQ((Geometry{GeometryKind::euclidean, 3}).shift(), 0.0);
  EXPECT_EQ((Geometry{GeometryKind::hyperbolic, 3}).shift(), -1.0);
  EXPECT_EQ((Geometry{GeometryKind::spherical, 4}).shift(), 2.25);
}

TEST(SpacePoint, ConstraintsAndDistance) {
  const Geometry e{GeometryKind::euclidean, 3};
  EXPECT_DOUBLE_EQ(distance(SpacePoint(e, {0, 0, 0}), SpacePoint(e, {3, 4, 0})), 5.0);
  const Geometry h{GeometryKind::hyperbolic, 2};
  EXPECT_THROW(SpacePoint(h, {1.0, 0.5, 0.0}), NumericError);
  EXPECT_NEAR(invariant_argument(SpacePoint::base(h), SpacePoint::polar(h, 0.7)), std::cosh(0.7), 1e-15);
  const Geometry s{GeometryKind::spherical, 2};
  EXPECT_NEAR(distance(SpacePoint::base(s), SpacePoint::polar(s, 2.9)), 2.9, 1e-14);
  // Small distances keep relative accuracy.
  EXPECT_LT(rel(distance(SpacePoint::base(h), SpacePoint::polar(h, 1e-9)), 1e-9), 1e-12);
}

// Elementary reductions of the three Green-function displays.
TEST(GreenRadial, ElementaryKernels) {
  const double beta = 1.3;
  for (double r : {0.05, 0.7, 2.4}) {
    EXPECT_LT(rel(green_radial({GeometryKind::euclidean, 1}, beta, r), std::exp(-beta * r) / (2 * beta)), 1e-14);
    EXPECT_LT(rel(green_radial({GeometryKind::euclidean, 3}, beta, r), std::exp(-beta * r) / (4 * kPi * r)), 1e-14);
    EXPECT_LT(rel(green_radial({GeometryKind::euclidean, 2}, beta, r),
                  boost::math::cyl_bessel_k(0, beta * r) / (2 * kPi)),
              1e-13);
    EXPECT_LT(rel(green_radial({GeometryKind::hyperbolic, 3}, beta, r),
                  std::exp(-beta * r) / (4 * kPi * std::sinh(r))),
              1e-13);
    EXPECT_LT(rel(green_radial({GeometryKind::spherical, 3}, beta, r),
                  std::sinh(beta * (kPi - r)) / (4 * kPi * std::sinh(kPi * beta) * std::sin(r))),
              1e-13);
  }
}

TEST(GreenRadial, FiveDimensionalEuclidean) {
  // d = 5: e^{-b r}(1 + b r) / (8 pi^2 r^3)
  const double beta = 0.8, r = 1.1;
  EXPECT_LT(rel(green_radial({GeometryKind::euclidean, 5}, beta, r),
                std::exp(-beta * r) * (1 + beta * r) / (8 * kPi * kPi * r * r * r)),
            1e-13);
}

TEST(GreenFree, CoincidentPointsAreSingular) {
  const Geometry e{GeometryKind::euclidean, 2};
  EXPECT_THROW(green_free(e, 1.0, SpacePoint::base(e), SpacePoint::base(e)), NumericError);
}

TEST(Sigma, TableValues) {
  EXPECT_DOUBLE_EQ(sigma(1, 2.0), -1.0 / 4.0);
  EXPECT_NEAR(sigma(2, 2.0), std::log(4.0) / (4 * kPi), 1e-16);
  EXPECT_NEAR(sigma(3, 2.0), 2.0 / (4 * kPi), 1e-16);
  EXPECT_NEAR(sigma_general(2, 2.0) - sigma(2, 2.0),
              (2 + 2 * std::numbers::egamma - 2 * std::numbers::ln2) / (4 * kPi), 1e-14);
}

TEST(Sigma, DerivativeMatchesSquaredKernelIntegral) {
  for (int d = 1; d <= 6; ++d) {
    const auto c = sigma_derivative_check(d, 1.4);
    EXPECT_LT(c.rel_diff(), 1e-8) << d;
  }
}

TEST(Sigma, HyperbolicThreeDimensional) {
  // Sigma'(rho) = 1/(8 pi beta), so Sigma = (beta - 1)/(4 pi) with Sigma(1) = 0.
  const Geometry h{GeometryKind::hyperbolic, 3};
  EXPECT_LT(rel(sigma_derivative_curved(h, 1.5), 1.0 / (8 * kPi * 1.5)), 1e-10);
  EXPECT_LT(rel(sigma_numeric_curved(h, 1.5), 0.5 / (4 * kPi)), 1e-9);
  EXPECT_NEAR(sigma_numeric_curved(h, 1.0), 0.0, 1e-15);
}

TEST(Krein, FreeLimitAndCoupling) {
  const Geometry e{GeometryKind::euclidean, 3};
  const SpacePoint x(e, {0.3, 0.1, -0.2}), y(e, {-0.5, 0.4, 0.6});
  EXPECT_DOUBLE_EQ(krein_green({e, 1.2}, x, y), green_free(e, 1.2, x, y));
  const double gamma = -0.3;
  const double expect = green_free(e, 1.2, x, y) + green_free(e, 1.2, x, SpacePoint::base(e)) *
                                                       green_free(e, 1.2, SpacePoint::base(e), y) /
                                                       (gamma + 1.2 / (4 * kPi));
  EXPECT_LT(rel(krein_green({e, 1.2, gamma}, x, y), expect), 1e-14);
}

TEST(Krein, ResonanceIsAStructuredError) {
  const Geometry e{GeometryKind::euclidean, 3};
  const SpacePoint x(e, {1, 0, 0}), y(e, {0, 1, 0});
  try {
    krein_green({e, 1.0, -1.0 / (4 * kPi)}, x, y);
    FAIL();
  } catch (const NumericError& err) {
    EXPECT_EQ(err.qualified_code(), "pointgreen.resonance");
  }
}

TEST(Krein, PdeResidualIsSecondOrder) {
  for (auto kind : {GeometryKind::euclidean, GeometryKind::hyperbolic, GeometryKind::spherical}) {
    const Geometry g{kind, 3};
    const KreinKernelSpec s{g, 1.2, kind == GeometryKind::euclidean ? 0.5 : kNoCoupling};
    const SpacePoint x = SpacePoint::polar(g, 0.9), y = SpacePoint::polar(g, 0.45, {0.0, 1.0, 0.0});
    const double r1 = pde_residual_check(s, x, y, 1e-2), r2 = pde_residual_check(s, x, y, 5e-3);
    EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.2) << g.name();
  }
}

TEST(Krein, ResolventDerivative1d) {
  const auto c = resolvent_derivative_check_1d(0.9, 0.7, -0.4, 1.1);
  EXPECT_LT(c.rel_diff(), 1e-8);
}
