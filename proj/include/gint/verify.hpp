#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Verification suites behind `gint verify` and the acceptance test. Each
// numbered criterion compares library outputs with an independent path
// (closed form, quadrature, Green's identity or an elementary reduction).
namespace gint::verify {

inline constexpr std::uint64_t kDefaultSeed = 20240517;

struct Check {
  int criterion = 0;
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double error = 0.0;      // relative unless `absolute`
  double tolerance = 0.0;
  bool absolute = false;
  bool pass = false;
  std::string note;        // error code or measured quantity
};

struct Options {
  std::uint64_t seed = kDefaultSeed;
};

std::vector<Check> run_criterion(int n, const Options& opts = {});

/// Suite names: macdonald (1-3), gegenbauer (4), genquad (5), symmetries (6),
/// sigma (7), krein (8), limits (9), all. Empty result for unknown names.
std::vector<int> criteria_for_suite(const std::string& suite);

std::string criterion_title(int n);

bool all_pass(const std::vector<Check>& checks);

}  // namespace gint::verify
