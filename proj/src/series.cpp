#include "gint/series.hpp"

#include <algorithm>
#include <cmath>

#include "gint/error.hpp"

namespace gint::series {

Series multiply(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series reciprocal(const Series& a) {
  if (a.empty() || a[0] == 0.0)
    throw NumericError("series", ErrorCode::domain, "reciprocal needs a nonzero constant term");
  Series r(a.size(), 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) s += a[j] * r[n - j];
    r[n] = -s / a[0];
  }
  return r;
}

// J.C.P. Miller recurrence.
Series power(const Series& a, double p) {
  if (a.empty() || !(a[0] > 0.0))
    throw NumericError("series", ErrorCode::domain, "power needs a positive constant term");
  Series b(a.size(), 0.0);
  b[0] = std::pow(a[0], p);
  for (std::size_t n = 1; n < a.size(); ++n) {
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
      s += (p * static_cast<double>(j) - static_cast<double>(n - j)) * a[j] * b[n - j];
    b[n] = s / (static_cast<double>(n) * a[0]);
  }
  return b;
}

Series compose(const Series& a, const Series& b) {
  if (!b.empty() && b[0] != 0.0)
    throw NumericError("series", ErrorCode::domain, "inner series must vanish at 0");
  const std::size_t n = std::min(a.size(), b.size());
  Series out(n, 0.0);
  // Horner: a0 + b (a1 + b (a2 + ...)).
  for (std::size_t k = n; k-- > 0;) {
    out = multiply(out, b);
    out.resize(n, 0.0);
    out[0] += a[k];
  }
  return out;
}

Series binomial(double c, double p, std::size_t n) {
  Series s(n, 0.0);
  if (n == 0) return s;
  s[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k)
    s[k] = s[k - 1] * (p - static_cast<double>(k - 1)) / static_cast<double>(k) * c;
  return s;
}

}  // namespace gint::series
