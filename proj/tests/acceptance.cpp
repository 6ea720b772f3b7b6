// Acceptance criteria 1-9: one PASS/FAIL line each, failing checks listed
// underneath. Arguments select criteria (default: all). Exit 1 on any failure.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "gint/verify.hpp"

int main(int argc, char** argv) {
  using namespace gint::verify;
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) which = criteria_for_suite("all");

  bool ok = true;
  for (int n : which) {
    const auto checks = run_criterion(n);
    const bool pass = all_pass(checks);
    ok = ok && pass;
    double worst = 0.0;
    for (const auto& c : checks)
      if (c.tolerance > 0.0) worst = std::max(worst, c.error / c.tolerance);
    std::printf("criterion %d %-40s %s  (%zu checks, worst error/tolerance %.2e)%s\n", n,
                criterion_title(n).c_str(), pass ? "PASS" : "FAIL", checks.size(), worst,
                n == 9 ? " [slow]" : "");
    for (const auto& c : checks) {
      if (c.pass) continue;
      std::printf("    FAIL %s: value %.17g reference %.17g error %.3e tolerance %.1e %s\n",
                  c.name.c_str(), c.value, c.reference, c.error, c.tolerance, c.note.c_str());
    }
  }
  return ok ? 0 : 1;
}
