#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gint/error.hpp"
#include "gint/sturm.hpp"

using namespace gint;
using cplx = std::complex<double>;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST(Sturm, BesselEigenpairSolvesOperator) {
  for (double alpha : {0.0, 0.4, 1.5})
    for (double r : {0.3, 1.0, 3.0}) {
      const auto spec = sturm::bessel_spec(alpha);
      const auto e = sturm::bessel_eigenpair(alpha, 1.7);
      EXPECT_LT(rel(sturm::apply_operator(spec, e.f, r, 0.0, e.df), e.energy * e.f(r)), 1e-7)
          << alpha << " " << r;
    }
}

TEST(Sturm, GegenbauerEigenpairsSolveOperator) {
  const auto si = sturm::gegenbauer_spec_interval(0.3);
  const auto s = sturm::gegenbauer_s_eigenpair(0.3, cplx(0.0, 0.8));
  for (double t : {0.2, 1.0, 1.7})
    EXPECT_LT(rel(sturm::apply_operator(si, s.f, t, 0.0, s.df), s.energy * s.f(t)), 1e-7) << t;
  const auto sh = sturm::gegenbauer_spec_half_line(-0.4);
  const auto z = sturm::gegenbauer_z_eigenpair(-0.4, 1.2);
  for (double u : {0.1, 1.0, 5.0})
    EXPECT_LT(rel(sturm::apply_operator(sh, z.f, u, 0.0, z.df), z.energy * z.f(u)), 1e-7) << u;
}

TEST(Sturm, EnergiesFollowConvention) {
  EXPECT_DOUBLE_EQ(sturm::bessel_eigenpair(0.3, 2.0).energy, -4.0);
  EXPECT_NEAR(sturm::gegenbauer_z_eigenpair(0.3, 1.2).energy, 1.44 - 0.64, 1e-15);
  EXPECT_NEAR(sturm::gegenbauer_s_eigenpair(0.3, cplx(0.0, 0.5)).energy, -0.25 - 0.64, 1e-15);
}

// Frozen: mpmath quad of K_a(Ar) K_a(Br) 2r over [0, 1, inf], mp.dps = 50.
TEST(Sturm, PairingIntegralFrozen) {
  struct Case {
    double alpha, a, b, value;
  };
  const Case cases[] = {{0.4, 2, 1, 0.61842603934641572669},
                        {-0.3, 1.5, 1, 0.75763042722974039184},
                        {0.0, 3, 2, 0.16218604324326575279}};
  quad::Options q{1e-12, 0.0, 4000};
  for (const auto& c : cases) {
    const auto spec = sturm::bessel_spec(c.alpha);
    const double v = sturm::pairing_integral(spec, sturm::bessel_eigenpair(c.alpha, c.a).f,
                                             sturm::bessel_eigenpair(c.alpha, c.b).f, q)
                         .value;
    EXPECT_LT(rel(v, c.value), 1e-10) << c.alpha;
  }
}

TEST(Sturm, GreensIdentityBessel) {
  for (double alpha : {-0.3, 0.4}) {
    const auto spec = sturm::bessel_spec(alpha);
    const auto c = sturm::greens_identity_check(spec, sturm::bessel_eigenpair(alpha, 2.0),
                                                sturm::bessel_eigenpair(alpha, 1.0));
    EXPECT_LT(rel(c.rhs, c.lhs), 1e-8) << alpha;
    EXPECT_NEAR(c.w_upper, 0.0, 1e-12);
  }
}

TEST(Sturm, GreensIdentityGegenbauer) {
  const auto si = sturm::gegenbauer_spec_interval(0.3);
  const auto cs = sturm::greens_identity_check(si, sturm::gegenbauer_s_eigenpair(0.3, cplx(0.0, 0.5)),
                                               sturm::gegenbauer_s_eigenpair(0.3, cplx(0.0, 1.0)));
  EXPECT_LT(rel(cs.rhs, cs.lhs), 1e-7);
  const auto sh = sturm::gegenbauer_spec_half_line(0.5);
  const auto cz = sturm::greens_identity_check(sh, sturm::gegenbauer_z_eigenpair(0.5, 2.0),
                                               sturm::gegenbauer_z_eigenpair(0.5, 1.0));
  EXPECT_LT(rel(cz.rhs, 8.0 / 3.0), 1e-7);
  EXPECT_LT(rel(cz.lhs, 8.0 / 3.0), 1e-9);
}

TEST(Sturm, EqualEnergiesRedirect) {
  const auto spec = sturm::bessel_spec(0.4);
  try {
    sturm::greens_identity_check(spec, sturm::bessel_eigenpair(0.4, 1.0), sturm::bessel_eigenpair(0.4, 1.0));
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_EQ(e.qualified_code(), "sturm.redirect");
  }
}

TEST(Sturm, DiagonalIntegralHalfOrder) {
  // int K_{1/2}(r)^2 2r dr = pi/2
  const auto spec = sturm::bessel_spec(0.5);
  const auto e = sturm::diagonal_integral(spec, [](double t) { return sturm::bessel_eigenpair(0.5, t); }, 1.0);
  EXPECT_LT(rel(e.value, std::numbers::pi / 2.0), 1e-8);
}

TEST(Sturm, WronskianOfIdenticalPairVanishes) {
  const auto spec = sturm::bessel_spec(0.4);
  const auto f = sturm::bessel_eigenpair(0.4, 1.3);
  EXPECT_NEAR(sturm::wronskian(spec, f, f, 0.7), 0.0, 1e-15);
}
