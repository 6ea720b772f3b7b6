#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "gint/error.hpp"
#include "gint/extrapolation.hpp"
#include "gint/genquad.hpp"
#include "gint/quad.hpp"
#include "gint/series.hpp"

using namespace gint;
using mp50 = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST(Quad, SmoothAndEndpointSingular) {
  const auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
  const auto s = quad::integrate_toward_endpoint([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 0.0,
                                                 {1e-12, 0.0, 4000});
  EXPECT_NEAR(s.value, 2.0, 1e-11);
  const auto t = quad::integrate_toward_endpoint([](double x) { return std::pow(1.0 - x, -0.7); }, 0.0,
                                                 1.0, 1.0, {1e-12, 0.0, 4000});
  EXPECT_NEAR(t.value, 1.0 / 0.3, 1e-10);
}

TEST(Quad, Tails) {
  const auto e = quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1.0);
  EXPECT_NEAR(e.value, 1.0, 1e-12);
  const auto p = quad::integrate_power_tail([](double x) { return 1.0 / (x * x * std::sqrt(x)); }, 1.0);
  EXPECT_NEAR(p.value, 1.0 / 1.5, 1e-12);
}

TEST(Extrapolation, RichardsonAndWynn) {
  std::vector<double> h{0.1, 0.05, 0.025, 0.0125}, v;
  for (double x : h) v.push_back(2.0 + 3.0 * x * x - x * x * x * x);
  EXPECT_NEAR(extrap::richardson(h, v, 2.0).value, 2.0, 1e-13);
  std::vector<double> partial;
  double s = 0.0;
  for (int k = 0; k < 14; ++k) partial.push_back(s += (k % 2 ? -1.0 : 1.0) / (2 * k + 1));
  EXPECT_NEAR(extrap::wynn_epsilon(partial).value, std::numbers::pi / 4.0, 1e-10);
}

TEST(Series, CompositionAndPowers) {
  const series::Series a{1.0, 2.0, 0.0, 0.0};
  const auto inv = series::reciprocal(a);  // 1 - 2x + 4x^2 - 8x^3
  EXPECT_DOUBLE_EQ(inv[3], -8.0);
  const auto sq = series::power(a, 0.5);
  const auto back = series::multiply(sq, sq);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(back[i], a[i], 1e-15);
  const auto c = series::compose(series::Series{0.0, 1.0, 1.0}, series::Series{0.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(c[2], 1.0);
}

// Non-anomalous power-exponentials: the finite part is Gamma(s) rate^-s; the
// oracle is Boost tgamma at 50 digits.
TEST(GenIntegrate, PowerExponentialMatchesGamma) {
  for (double s : {0.7, -0.5, -1.3, -2.6})
    for (double rate : {1.0, 2.0}) {
      const auto f = genquad::power_exponential(s, rate);
      const double ref = static_cast<double>(boost::math::tgamma(mp50(s)) * pow(mp50(rate), -mp50(s)));
      EXPECT_LT(rel(genquad::gen_integrate(f).value, ref), 1e-10) << s << " " << rate;
      EXPECT_EQ(genquad::gen_integrate(f).anomaly, 0.0);
    }
}

// Frozen Hadamard finite parts (mpmath, mp.dps = 50):
//   p.f. int r^-2 e^-r = gamma_E - 1
//   p.f. int r^-1.5 e^-2r = Gamma(-1/2) sqrt 2
//   p.f. int r^-3 e^-1.5r = 1.5^2 (3/2 - gamma_E - ln 1.5) / 2
TEST(GenIntegrate, FiniteParts) {
  EXPECT_NEAR(genquad::gen_integrate(genquad::power_exponential(-1.0)).value, -0.42278433509846713939, 1e-12);
  EXPECT_NEAR(genquad::gen_integrate(genquad::power_exponential(-0.5, 2.0)).value, -5.0132565492620010048,
              1e-11);
  EXPECT_NEAR(genquad::gen_integrate(genquad::power_exponential(-2.0, 1.5)).value, 0.58198413036409060209,
              1e-11);
  EXPECT_NEAR(genquad::gen_integrate(genquad::power_exponential(0.0)).value, -std::numbers::egamma, 1e-12);
}

TEST(GenIntegrate, AnomalyIsReported) {
  const auto r = genquad::gen_integrate(genquad::power_exponential(-2.0, 1.5));
  EXPECT_NEAR(r.anomaly, 1.5 * 1.5 / 2.0, 1e-14);
  EXPECT_TRUE(genquad::power_exponential(0.0).expansion.anomalous());
}

TEST(GenIntegrate, SplitShiftLaw) {
  const auto f = genquad::power_exponential(-1.0);
  for (double c : {0.5, 2.0, 5.0})
    EXPECT_NEAR(genquad::split_shift(f, c), -f.expansion.anomaly() * std::log(c), 1e-10);
}

TEST(GenIntegrate, ScalingAndPowerLaws) {
  const auto f = genquad::bessel_product_integrand(1.0, 2.0, 1.0);
  for (double a : {0.5, 3.0}) {
    const auto c = genquad::scaling_check(f, a);
    EXPECT_LT(rel(c.lhs, c.rhs), 1e-9);
  }
  const auto p = genquad::power_check(genquad::power_exponential(-0.5), 2.0);
  EXPECT_LT(rel(p.lhs, p.rhs), 1e-9);
}

TEST(GenIntegrate, ChangeOfVariables) {
  // u + u^2 on r^-2 e^-r: correction -f_{-1} ln g'(0) + f_{-2} [u](u/g) = -1.
  const auto f = genquad::power_exponential(-1.0);
  EXPECT_NEAR(genquad::change_of_var_correction(f.expansion, genquad::quadratic_map()), -1.0, 1e-14);
  EXPECT_NEAR(genquad::change_of_var_correction(f.expansion, genquad::sinh_map()), 0.0, 1e-14);
  for (const auto& g : {genquad::quadratic_map(), genquad::sinh_map()}) {
    const auto c = genquad::change_of_var_check(f, g);
    EXPECT_NEAR(c.lhs, c.rhs, 1e-6) << g.name;
  }
}

TEST(GenIntegrate, InconsistentExpansionIsDetected) {
  auto f = genquad::power_exponential(-1.0);
  f.expansion.terms[0].coefficient *= 1.5;
  f.remainder = {};
  EXPECT_THROW(genquad::gen_integrate(f), NumericError);
}

TEST(BesselProduct, StandardAndContinued) {
  // alpha = 1/2, a = b = 1: pi/2 (standard); alpha = 3/2: -3 pi / 2 (continued).
  EXPECT_LT(rel(genquad::gen_bilinear_macdonald(0.5, 1.0, 1.0).value, std::numbers::pi / 2.0), 1e-12);
  EXPECT_LT(rel(genquad::gen_bilinear_macdonald(1.5, 1.0, 1.0).value, -1.5 * std::numbers::pi), 1e-12);
  EXPECT_LT(rel(genquad::gen_bilinear_macdonald(1.0, 2.0, 2.0).value, -(1.0 + 2.0 * std::numbers::egamma) / 4.0),
            1e-10);
}

TEST(BesselProduct, NearIntegerOrderIsRejected) {
  EXPECT_THROW(genquad::expansion_from_bessel_product(1.0 + 1e-10, 1.0, 2.0), NumericError);
}

// The connection-series expansion must agree with an independent least-squares
// fit of the integrand near u = 0 on the same exponent basis.
TEST(GegenbauerExpansion, SeriesMatchesNumericFit) {
  using genquad::GegenbauerKind;
  for (auto kind : {GegenbauerKind::S, GegenbauerKind::Z}) {
    const double alpha = 1.3, l1 = 1.2, l2 = 0.7;
    const auto f = genquad::gegenbauer_integrand(kind, alpha, l1, l2);
    const auto e = genquad::gegenbauer_expansion(kind, alpha, l1, l2);
    std::vector<double> exps;
    std::vector<double> coeffs;
    for (const auto& t : e.terms)
      if (t.exponent < 2.0) {
        exps.push_back(t.exponent);
        coeffs.push_back(t.coefficient);
      }
    std::vector<double> probes;
    for (double u = 1e-3; u < 0.2; u *= 1.6) probes.push_back(u);
    const auto fit = genquad::fit_expansion(f.evaluate, exps, probes);
    EXPECT_LT(fit.residual, 1e-6);
    // The most singular coefficients are the best determined.
    EXPECT_LT(rel(fit.coefficients[0], coeffs[0]), 1e-6);
    EXPECT_LT(rel(fit.coefficients[1], coeffs[1]), 1e-4);
  }
}

TEST(GegenbauerIntegral, FrozenQuadrature) {
  using genquad::GegenbauerKind;
  // mpmath quad at mp.dps = 50 of the defining integrals (same series as test_specfun).
  EXPECT_LT(rel(genquad::gen_bilinear_gegenbauer(GegenbauerKind::S, 0.3, 0.5, 1.0).value, 48.283521226376577211),
            1e-10);
  EXPECT_LT(rel(genquad::gen_bilinear_gegenbauer(GegenbauerKind::S, -0.4, 0.8, 1.5).value, 93.653577845055278949),
            1e-10);
  EXPECT_LT(rel(genquad::gen_bilinear_gegenbauer(GegenbauerKind::Z, 0.3, 1.2, 0.9).value, 3.1836304554133017695),
            1e-10);
}

TEST(GegenbauerIntegral, IntegerOrderUnsupported) {
  EXPECT_THROW(genquad::gen_bilinear_gegenbauer(genquad::GegenbauerKind::Z, 1.0, 1.2, 0.7), NumericError);
}
