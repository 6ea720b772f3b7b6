#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "gint/error.hpp"
#include "gint/specfun.hpp"

using namespace gint;
using gint::specfun::cplx;
using mp50 = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

// Oracle: Boost.Math templated on a 50-digit binary float.
TEST(Gamma, AgreesWithMultiprecision) {
  for (double x : {0.1, 0.5, 1.3, 4.7, 17.25, 120.5, -0.3, -2.5, -7.9}) {
    const double ref = static_cast<double>(boost::math::tgamma(mp50(x)));
    EXPECT_LT(rel(specfun::gamma(x), ref), 1e-14) << x;
    EXPECT_LT(rel(specfun::rgamma(x), 1.0 / ref), 1e-14) << x;
  }
}

TEST(Gamma, PolesAreErrorsAndReciprocalVanishes) {
  EXPECT_THROW(specfun::gamma(-3.0), NumericError);
  EXPECT_EQ(specfun::rgamma(-3.0), 0.0);
  EXPECT_EQ(specfun::rgamma(0.0), 0.0);
}

TEST(Digamma, AgreesWithMultiprecision) {
  for (double x : {0.25, 1.0, 2.0, 3.5, 11.0}) {
    const double ref = static_cast<double>(boost::math::digamma(mp50(x)));
    EXPECT_LT(std::abs(specfun::digamma(x) - ref), 1e-14 * std::max(1.0, std::abs(ref))) << x;
  }
  EXPECT_NEAR(specfun::digamma(1.0), -std::numbers::egamma, 1e-15);
}

// Boost's multiprecision digamma mishandles some negative arguments (it gives
// psi(0.5) at -0.5), so negative x uses frozen mpmath values (mp.dps = 40).
TEST(Digamma, NegativeArgumentsFrozen) {
  EXPECT_NEAR(specfun::digamma(-0.5), 0.036489973978576520559, 1e-14);
  EXPECT_NEAR(specfun::digamma(-3.3), 3.6203534605921257857, 1e-13);
  EXPECT_NEAR(specfun::digamma(-7.25), 5.1899772149562878875, 1e-13);
  EXPECT_THROW(specfun::digamma(-2.0), NumericError);
}

TEST(Gamma, AbsoluteSquareOnVerticalLine) {
  // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
  for (double y : {0.0, 0.3, 2.0, 9.0}) {
    const double ref = std::log(std::numbers::pi / std::cosh(std::numbers::pi * y));
    EXPECT_NEAR(specfun::log_abs_gamma_sq(0.5, y), ref, 1e-13 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Pochhammer, SmallCases) {
  EXPECT_NEAR(specfun::pochhammer(cplx(0.5, 0.0), 3).real(), 0.5 * 1.5 * 2.5, 1e-15);
  EXPECT_EQ(specfun::pochhammer(cplx(7.0, 1.0), 0), cplx(1.0, 0.0));
}

class BesselKGrid : public ::testing::TestWithParam<double> {};

TEST_P(BesselKGrid, AgreesWithMultiprecision) {
  const double nu = GetParam();
  for (double x : {1e-3, 0.05, 0.5, 1.9, 2.1, 7.0, 30.0, 300.0}) {
    const mp50 ref = boost::math::cyl_bessel_k(mp50(nu), mp50(x));
    const double r = static_cast<double>(ref);
    EXPECT_LT(rel(specfun::bessel_k(nu, x), r), 1e-12) << "nu=" << nu << " x=" << x;
    const double scaled = static_cast<double>(ref * exp(mp50(x)));
    EXPECT_LT(rel(specfun::bessel_k_scaled(nu, x), scaled), 1e-12) << "nu=" << nu << " x=" << x;
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, BesselKGrid,
                         ::testing::Values(0.0, 0.3, 0.5, 1.0, 2.0, 2.5, 7.2, -0.7, -2.0));

TEST(BesselK, HalfIntegerIsElementary) {
  for (double x : {0.1, 1.0, 5.0})
    EXPECT_LT(rel(specfun::bessel_k(0.5, x), std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x)),
              1e-14);
}

TEST(BesselK, DerivativeRecurrence) {
  // K'_nu = -(K_{nu-1} + K_{nu+1}) / 2
  for (double nu : {0.0, 0.4, 3.0})
    for (double x : {0.3, 4.0}) {
      const double ref = -0.5 * (specfun::bessel_k(nu - 1.0, x) + specfun::bessel_k(nu + 1.0, x));
      EXPECT_LT(rel(specfun::bessel_k_derivative(nu, x), ref), 1e-13);
    }
}

TEST(BesselK, DomainErrors) {
  EXPECT_THROW(specfun::bessel_k(0.5, 0.0), NumericError);
  EXPECT_THROW(specfun::bessel_k(0.5, -1.0), NumericError);
}

// Frozen values: mpmath 1.3, mp.dps = 50,
//   S = hyp2f1(1/2+a+l, 1/2+a-l, 1+a, (1-w)/2) * rgamma(1+a)
//   Z = (w+1)^-(1/2+a+l) rgamma(l+1) hyp2f1(1/2+l, 1/2+l+a, 1+2l, 2/(1+w))
// with every double argument converted exactly (mpf(0.3) etc.).
struct SCase {
  double alpha;
  cplx lambda;
  double w, value;
};

TEST(GegenbauerS, FrozenHighPrecisionValues) {
  const SCase cases[] = {
      {0.3, {0.0, 0.7}, 0.2, 1.6924830665549172414},
      {0.3, {0.0, 0.7}, -0.8, 5.3949969221889107324},
      {-0.4, {1.3, 0.0}, 0.5, 0.22086903201181329516},
      {1.7, {0.0, 2.2}, -0.95, 3487.6478877079110153},
      {0.5, {0.25, 0.0}, 2.5, 0.79147654915150352686},
      {-0.7, {0.0, 0.4}, 1.8, 0.25435565061088772858},
      {2.3, {1.1, 0.0}, 0.0, 1.5487727987338443372},
      {0.3, {0.0, 3.0}, -0.99, 7138.0874599778177414},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel(specfun::gegenbauer_s(c.alpha, c.lambda, c.w), c.value), 1e-12)
        << c.alpha << " " << c.lambda << " " << c.w;
    EXPECT_LT(rel(specfun::gegenbauer_s_offset(c.alpha, c.lambda, 1.0 + c.w), c.value), 1e-12);
  }
}

TEST(GegenbauerS, ValueAtOne) {
  EXPECT_LT(rel(specfun::gegenbauer_s(0.3, cplx(0.0, 0.7), 1.0), 1.0 / std::tgamma(1.3)), 1e-15);
}

TEST(GegenbauerS, LogScaleMultiplies) {
  const double v = specfun::gegenbauer_s(0.3, cplx(0.0, 0.7), 0.2);
  EXPECT_LT(rel(specfun::gegenbauer_s(0.3, cplx(0.0, 0.7), 0.2, 3.0), v * std::exp(3.0)), 1e-14);
}

TEST(GegenbauerZ, FrozenHighPrecisionValues) {
  struct ZCase {
    double alpha, lambda, w, value;
  };
  const ZCase cases[] = {
      {0.3, 0.7, 2.0, 0.45502915811894955317},   {0.3, 0.7, 1.05, 3.2940804216898752467},
      {-0.4, 1.3, 1.5, 0.59346586378300841857},  {1.7, 0.2, 3.0, 0.095267720318986219756},
      {-0.7, 2.5, 1.2, 0.33938187392139439705},  {0.5, 1.0, 10.0, 0.010075630518424150979},
      {2.3, 0.6, 1.01, 9416.9733166452336685},   {0.0, 1.5, 1.3, 0.73112933813010392965},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel(specfun::gegenbauer_z(c.alpha, c.lambda, c.w), c.value), 1e-12)
        << c.alpha << " " << c.lambda << " " << c.w;
    EXPECT_LT(rel(specfun::gegenbauer_z_offset(c.alpha, c.lambda, c.w - 1.0), c.value), 1e-12);
  }
}

TEST(GegenbauerZ, RoutesAgree) {
  using specfun::Route;
  for (double w : {1.2, 1.6, 2.5}) {
    const double a = specfun::gegenbauer_z_eval(0.3, 0.7, w, 0.0, Route::series).value;
    const double b = specfun::gegenbauer_z_eval(0.3, 0.7, w, 0.0, Route::whipple).value;
    EXPECT_LT(rel(a, b), 1e-12) << w;
  }
}

// Frozen: mpmath diff() of the expressions above at mp.dps = 50.
TEST(Gegenbauer, DerivativesFrozen) {
  EXPECT_LT(rel(specfun::gegenbauer_z_derivative(0.3, 0.7, 2.0), -0.42267110116636880894), 1e-11);
  EXPECT_LT(rel(specfun::gegenbauer_z_derivative(-0.4, 1.3, 1.5), -0.75371774531871353579), 1e-11);
  EXPECT_LT(rel(specfun::gegenbauer_s_derivative(0.3, cplx(0.0, 0.7), 0.2), -1.0875447155560812276),
            1e-11);
  EXPECT_LT(rel(specfun::gegenbauer_s_derivative(-0.4, cplx(1.3, 0.0), 0.5), 0.85824364889621220332),
            1e-11);
}

TEST(Gegenbauer, Symmetries) {
  for (double w : {-0.5, 0.4, 1.7}) {
    EXPECT_LT(rel(specfun::gegenbauer_s(0.3, cplx(0.8, 0.0), w), specfun::gegenbauer_s(0.3, cplx(-0.8, 0.0), w)),
              1e-14);
  }
  for (double w : {1.1, 2.0, 4.0}) {
    const double lhs = specfun::gegenbauer_z(0.3, 0.9, w);
    const double rhs = specfun::gegenbauer_z(-0.3, 0.9, w) * std::pow(w * w - 1.0, -0.3);
    EXPECT_LT(rel(lhs, rhs), 1e-12) << w;
  }
}

TEST(Gegenbauer, WhippleIdentity) {
  for (double w : {1.1, 1.5, 2.8})
    for (double alpha : {0.3, -0.4}) {
      EXPECT_LT(rel(specfun::whipple_z_from_s(alpha, 0.9, w), specfun::gegenbauer_z(alpha, 0.9, w)), 1e-11);
      if (alpha > 0)
        EXPECT_LT(rel(specfun::whipple_s_from_z(alpha, 0.9, w),
                      specfun::gegenbauer_s(alpha, cplx(0.9, 0.0), w)),
                  1e-11);
    }
}

// Finite-difference residual of the Gegenbauer equation shrinks like h^2.
TEST(Gegenbauer, EquationResidualIsSecondOrder) {
  const double alpha = 0.3, w = 0.35;
  const cplx lam(0.0, 1.1);
  auto residual = [&](double h) {
    auto f = [&](double x) { return specfun::gegenbauer_s(alpha, lam, x); };
    const double d2 = (f(w + h) - 2 * f(w) + f(w - h)) / (h * h);
    const double d1 = (f(w + h) - f(w - h)) / (2 * h);
    const double l2 = (lam * lam).real();
    return std::abs((1 - w * w) * d2 - 2 * (1 + alpha) * w * d1 + (l2 - (alpha + 0.5) * (alpha + 0.5)) * f(w));
  };
  const double r1 = residual(1e-2), r2 = residual(5e-3);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.2);
}

TEST(Gegenbauer, OutOfDomain) {
  EXPECT_THROW(specfun::gegenbauer_z(0.3, 0.7, 0.5), NumericError);
  EXPECT_THROW(specfun::gegenbauer_s(0.3, cplx(0.7, 0.2), 0.5), NumericError);
}
