#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace gint::genquad {

using RealFunction = std::function<double(double)>;

/// Integrability margin: terms r^k (no log) with k <= -1 + kDelta are subtracted.
inline constexpr double kDelta = 0.05;

/// f_k r^k (ln r)^m
struct SingularTerm {
  double exponent = 0.0;
  int log_power = 0;
  double coefficient = 0.0;
};

/// Small-r expansion at the singular endpoint 0. May contain more terms
/// than the singular set; only subtracted() enters the generalized integral.
struct SingularExpansion {
  std::vector<SingularTerm> terms;
  double radius = 1.0;

  /// Combine terms with equal (exponent, log_power) and drop exact zeros;
  /// sorted by exponent.
  static SingularExpansion merged(std::vector<SingularTerm> terms, double radius = 1.0);

  /// Coefficient of r^{-1} (log_power 0); zero when absent.
  double anomaly() const;
  /// Nonzero coefficient at some negative integer exponent.
  bool anomalous() const;
  /// The set Omega: log_power 0 terms with exponent <= -1 + kDelta.
  std::vector<SingularTerm> subtracted() const;
  /// Exponent of the first term above the subtraction threshold (inf if none).
  double leading_regular_exponent() const;

  double evaluate(double r) const;
  double evaluate_subtracted(double r) const;
  /// Sum of all terms outside Omega.
  double evaluate_rest(double r) const;

  /// Expansion of u -> a f(a u).
  SingularExpansion rescaled(double a) const;
  /// Expansion of u -> f(u^p) p u^{p-1}.
  SingularExpansion power_transformed(double p) const;
  /// Multiply by c r^shift.
  SingularExpansion scaled(double c, double shift = 0.0) const;

  /// Throws inconsistency when a log term sits at an exponent <= -1.
  void validate() const;
};

/// r^e (ln r)^m summed over a term list.
double evaluate_terms(const std::vector<SingularTerm>& terms, double r);
/// Product of two expansions (all pairwise terms, merged).
SingularExpansion multiply(const SingularExpansion& a, const SingularExpansion& b);

enum class TailKind { exponential, power, finite };

struct Tail {
  TailKind kind = TailKind::exponential;
  double rate = 1.0;  // decay rate (exponential) or power p > 1 (power)
};

struct GenIntegrand {
  RealFunction evaluate;
  SingularExpansion expansion;
  double upper = std::numeric_limits<double>::infinity();
  Tail tail;
  /// Optional f - sum_Omega f_k r^k computed without cancellation on
  /// (0, remainder_radius].
  RealFunction remainder;
  double remainder_radius = 0.0;
  std::string name;
};

struct GenOptions {
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
  bool probe = true;
};

struct GenResult {
  double value = 0.0;
  double anomaly = 0.0;
  double error = 0.0;  // achieved absolute tolerance estimate
  long evaluations = 0;
};

/// sum_{k in Omega, k != -1} f_k s^{k+1}/(k+1) + int_0^s (f - sum f_k r^k) + int_s^U f.
GenResult gen_integrate(const GenIntegrand& f, double split = 1.0, const GenOptions& opts = {});

/// gen_integrate(split = c) - gen_integrate(split = 1); equals -f_{-1} ln c.
double split_shift(const GenIntegrand& f, double c, const GenOptions& opts = {});

struct CheckPair {
  double lhs = 0.0;
  double rhs = 0.0;
  double diff() const { return lhs - rhs; }
};

GenIntegrand rescale(const GenIntegrand& f, double a);
GenIntegrand power_transform(const GenIntegrand& f, double p);

/// lhs = gen int f, rhs = gen int f(a u) a du + f_{-1} ln a.
CheckPair scaling_check(const GenIntegrand& f, double a, const GenOptions& opts = {});
/// lhs = gen int f, rhs = gen int f(u^p) p u^{p-1} du.
CheckPair power_check(const GenIntegrand& f, double p, const GenOptions& opts = {});

/// Smooth map g with g(0) = 0, g'(0) > 0, increasing and unbounded.
/// taylor[n] is the coefficient of u^n (taylor[0] = 0).
struct SmoothMap {
  RealFunction g;
  RealFunction dg;
  std::vector<double> taylor;
  std::string name;
};

SmoothMap linear_map(double c);
SmoothMap quadratic_map();  // u + u^2
SmoothMap sinh_map();       // sinh u

/// -f_{-1} ln g'(0) + sum_{l >= 2} f_{-l} / ((l-1)(l-1)!) d^{l-1}/du^{l-1} (u/g)^{l-1} at 0.
double change_of_var_correction(const SingularExpansion& e, const SmoothMap& g);

/// Expansion of u -> f(g(u)) g'(u) through exponents `upto`, built from the
/// Taylor data of g.
SingularExpansion transform_expansion(const SingularExpansion& e, const SmoothMap& g,
                                      double upto = 1.0);
GenIntegrand change_variables(const GenIntegrand& f, const SmoothMap& g);

/// lhs = gen int f(g(u)) g'(u) du - gen int f dr, rhs = correction.
CheckPair change_of_var_check(const GenIntegrand& f, const SmoothMap& g,
                              const GenOptions& opts = {});

/// r^(s-1) e^{-rate r} with its complete expansion; gen int = Gamma(s) rate^{-s}
/// for s not a non-positive integer.
GenIntegrand power_exponential(double s, double rate = 1.0, double scale = 1.0);

// ---------------------------------------------------------------------------
// Bilinear integrands

/// Small-r expansion of K_alpha(a r) K_alpha(b r) 2r with `depth` terms per
/// series branch (includes log terms for integer alpha).
SingularExpansion expansion_from_bessel_product(double alpha, double a, double b,
                                                int depth = 24);
GenIntegrand bessel_product_integrand(double alpha, double a, double b);
/// gen int_0^inf K_alpha(a r) K_alpha(b r) 2r dr.
GenResult gen_bilinear_macdonald(double alpha, double a, double b, const GenOptions& opts = {});

enum class GegenbauerKind { S, Z };

/// Integrand of the Gegenbauer bilinear integrals in the canonical variable:
///   Z: u = 2(w-1) on (0, inf),  Z1 Z2 (u (1 + u/4))^alpha
///   S: u = 2(1+w) on (0, 4),    S1 S2 (u (1 - u/4))^alpha
/// For S the degrees are i*l1, i*l2 (l = beta). log_scale multiplies each
/// factor by exp(log_scale).
GenIntegrand gegenbauer_integrand(GegenbauerKind kind, double alpha, double l1, double l2,
                                  double log_scale = 0.0);
/// Local expansion of the canonical integrand at u = 0 from the connection
/// series, `depth` terms per branch.
SingularExpansion gegenbauer_expansion(GegenbauerKind kind, double alpha, double l1, double l2,
                                       double log_scale = 0.0, int depth = 40);
GenResult gen_bilinear_gegenbauer(GegenbauerKind kind, double alpha, double l1, double l2,
                                  double log_scale = 0.0, const GenOptions& opts = {});

struct FitResult {
  std::vector<double> exponents;
  std::vector<double> coefficients;
  double residual = 0.0;  // max relative misfit at the probes
};

/// Least-squares fit of f(u) ~ sum_j c_j u^{e_j} at probe points.
FitResult fit_expansion(const RealFunction& f, const std::vector<double>& exponents,
                        const std::vector<double>& probes);

}  // namespace gint::genquad
