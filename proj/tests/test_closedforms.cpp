#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gint/closedforms.hpp"
#include "gint/error.hpp"
#include "gint/genquad.hpp"
#include "gint/specfun.hpp"

using namespace gint;
using closedforms::Formula;
using closedforms::LimitVariable;

namespace {

constexpr double kPi = std::numbers::pi;
double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

// Frozen: mpmath quad of K_a(Ar) K_a(Br) 2r over [0, 1, inf], mp.dps = 50.
TEST(Macdonald, BilinearFrozen) {
  EXPECT_LT(rel(closedforms::mac_bilinear_closed(0.4, 2, 1), 0.61842603934641572669), 1e-13);
  EXPECT_LT(rel(closedforms::mac_bilinear_closed(-0.3, 1.5, 1), 0.75763042722974039184), 1e-13);
  EXPECT_LT(rel(closedforms::mac_bilinear_closed(0.0, 3, 2), 0.16218604324326575279), 1e-13);
}

TEST(Macdonald, HalfOrderIsElementary) {
  // K_{1/2}(x) = sqrt(pi/(2x)) e^-x gives pi / (sqrt(ab) (a + b)).
  for (auto [a, b] : {std::pair{2.0, 1.0}, std::pair{3.0, 0.5}})
    EXPECT_LT(rel(closedforms::mac_bilinear_closed(0.5, a, b), kPi / (std::sqrt(a * b) * (a + b))), 1e-14);
  EXPECT_LT(rel(closedforms::mac_square_closed(0.5, 1.0), kPi / 2.0), 1e-15);
}

TEST(Macdonald, SymmetricInOrderSign) {
  EXPECT_LT(rel(closedforms::mac_bilinear_closed(0.7, 2, 1), closedforms::mac_bilinear_closed(-0.7, 2, 1)), 1e-15);
}

TEST(Macdonald, AnomalousSquare) {
  EXPECT_LT(rel(closedforms::mac_square_closed(1.0, 2.0), -(1.0 + 2.0 * std::numbers::egamma) / 4.0), 1e-14);
}

TEST(Macdonald, AnomalousOffDiagonalMatchesFinitePart) {
  for (double alpha : {1.0, 2.0, -1.0})
    EXPECT_LT(rel(closedforms::mac_bilinear_closed(alpha, 2.0, 1.0),
                  genquad::gen_bilinear_macdonald(alpha, 2.0, 1.0).value),
              1e-10)
        << alpha;
}

TEST(Macdonald, ContinuationMatchesFinitePart) {
  for (double alpha : {1.3, 2.7})
    EXPECT_LT(rel(closedforms::mac_bilinear_closed(alpha, 3.0, 2.0),
                  genquad::gen_bilinear_macdonald(alpha, 3.0, 2.0).value),
              1e-10);
}

TEST(Macdonald, DiagonalRedirects) {
  try {
    closedforms::mac_bilinear_closed(0.4, 1.0, 1.0);
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_EQ(e.code(), ErrorCode::redirect);
  }
}

TEST(Macdonald, LimitDiagonalRecoversSquare) {
  const auto e = closedforms::limit_diagonal(Formula::mac_bilinear, {-0.7, 1.0, 1.0}, LimitVariable::spectral);
  EXPECT_LT(rel(e.value, closedforms::mac_square_closed(-0.7, 1.0)), 1e-10);
  const auto a = closedforms::limit_diagonal(Formula::mac_square, {0.5, 1.0, 1.0}, LimitVariable::alpha);
  EXPECT_LT(rel(a.value, kPi / 2.0), 1e-10);
}

// Frozen: mpmath quad of the defining integrals at mp.dps = 50 (see test_specfun
// for the series used for S and Z).
TEST(Gegenbauer, ClosedFormsFrozen) {
  EXPECT_LT(rel(closedforms::geg_s_bilinear_closed(0.3, 0.5, 1.0), 48.283521226376577211), 1e-12);
  EXPECT_LT(rel(closedforms::geg_s_bilinear_closed(-0.4, 0.8, 1.5), 93.653577845055278949), 1e-12);
  EXPECT_LT(rel(closedforms::geg_z_bilinear_closed(0.3, 1.2, 0.9), 3.1836304554133017695), 1e-12);
  EXPECT_LT(rel(closedforms::geg_z_bilinear_closed(0.5, 2.0, 1.0), 8.0 / 3.0), 1e-14);
}

TEST(Gegenbauer, LogScaleMultipliesTwice) {
  const double v = closedforms::geg_z_bilinear_closed(0.3, 1.2, 0.9);
  EXPECT_LT(rel(closedforms::geg_z_bilinear_closed(0.3, 1.2, 0.9, 2.0), v * std::exp(4.0)), 1e-13);
}

TEST(Gegenbauer, ContinuedZAgreesWithFinitePart) {
  for (double alpha : {1.3, -0.3, 2.3})
    EXPECT_LT(rel(genquad::gen_bilinear_gegenbauer(genquad::GegenbauerKind::Z, alpha, 1.2, 0.7).value,
                  closedforms::geg_z_bilinear_closed(alpha, 1.2, 0.7)),
              1e-10)
        << alpha;
}

TEST(Gegenbauer, DiagonalByExtrapolationMatchesFinitePart) {
  const auto e = closedforms::limit_diagonal(Formula::geg_z, {0.3, 1.2, 1.2}, LimitVariable::spectral);
  EXPECT_LT(rel(e.value, genquad::gen_bilinear_gegenbauer(genquad::GegenbauerKind::Z, 0.3, 1.2, 1.2).value), 1e-10);
  const auto s = closedforms::limit_diagonal(Formula::geg_s, {0.3, 0.8, 0.8}, LimitVariable::spectral);
  EXPECT_LT(rel(s.value, genquad::gen_bilinear_gegenbauer(genquad::GegenbauerKind::S, 0.3, 0.8, 0.8).value), 1e-10);
}

TEST(Evaluate, DispatchesAndRedirectsDiagonal) {
  EXPECT_DOUBLE_EQ(closedforms::evaluate(Formula::mac_bilinear, {0.4, 2.0, 1.0}),
                   closedforms::mac_bilinear_closed(0.4, 2.0, 1.0));
  EXPECT_THROW(closedforms::geg_z_bilinear_closed(0.3, 1.0, 1.0), NumericError);
}
