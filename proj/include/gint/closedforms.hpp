#pragma once

#include "gint/extrapolation.hpp"

namespace gint::closedforms {

/// Orders closer than this to an integer (but not on it) are rejected by the
/// continuation formulas.
inline constexpr double kNearInteger = 1e-6;

/// gen int_0^inf K_alpha(a r) K_alpha(b r) 2r dr for a != b. Integer alpha
/// uses the anomalous formula (alpha = 0 gives 2 ln(a/b)/(a^2-b^2)).
double mac_bilinear_closed(double alpha, double a, double b);

/// gen int_0^inf K_alpha(b r)^2 2r dr.
double mac_square_closed(double alpha, double b);

/// int_{-1}^{1} S_{alpha,i beta1} S_{alpha,i beta2} (1-w^2)^alpha 2dw for
/// beta1 != beta2, times exp(2 log_scale).
double geg_s_bilinear_closed(double alpha, double beta1, double beta2, double log_scale = 0.0);

/// int_1^inf Z_{alpha,l1} Z_{alpha,l2} (w^2-1)^alpha 2dw for l1 != l2,
/// times exp(2 log_scale).
double geg_z_bilinear_closed(double alpha, double l1, double l2, double log_scale = 0.0);

enum class Formula { mac_bilinear, mac_square, geg_s, geg_z };
enum class LimitVariable { spectral, alpha };

/// alpha and the two spectral parameters (a, b), (beta1, beta2) or (l1, l2).
/// mac_square reads only p2 (= b).
struct FormulaParams {
  double alpha = 0.0;
  double p1 = 1.0;
  double p2 = 1.0;
};

double evaluate(Formula f, const FormulaParams& p);

struct LimitOptions {
  double first_step = 0.05;  // relative to max(1, |limit point|)
  int terms = 6;
};

/// Limit of an off-diagonal formula: spectral takes p2 -> p1, alpha takes
/// alpha -> p.alpha. Symmetric samples, extrapolated in the squared step.
extrap::Estimate limit_diagonal(Formula f, const FormulaParams& p, LimitVariable v,
                                const LimitOptions& opts = {});

}  // namespace gint::closedforms
