#pragma once

#include <vector>

// Truncated power series sum_n c[n] x^n; all results keep the length of
// the (shortest) input.
namespace gint::series {

using Series = std::vector<double>;

Series multiply(const Series& a, const Series& b);
/// 1 / a; requires a[0] != 0.
Series reciprocal(const Series& a);
/// a^p for real p; requires a[0] > 0.
Series power(const Series& a, double p);
/// a(b(x)) with b[0] == 0.
Series compose(const Series& a, const Series& b);
/// (1 + c x)^p truncated to n terms.
Series binomial(double c, double p, std::size_t n);

}  // namespace gint::series
