// Acceptance gate: runs the fifteen registered verification checks with
// their default parameters and enforces each one's wall-time budget. Prints
// one verdict line per criterion and exits nonzero if any fails.

#include <cstdio>
#include <string>
#include <vector>

#include "takiff/suite.hpp"

using namespace takiff;

int main() {
  struct Budget {
    const char* name;
    double seconds;
  };
  const std::vector<Budget> budgets{
      {"bracket_jacobi", 1.0},   {"centrality", 1.0},    {"pbw_associativity", 120.0},
      {"closed_forms", 5.0},     {"claim1", 120.0},      {"quotient_basis", 60.0},
      {"saturation", 120.0},     {"verma_scalars", 5.0}, {"verma_singular", 60.0},
      {"q_character", 120.0},    {"free_c_action", 60.0}, {"dichotomy", 300.0},
      {"ann_q", 300.0},          {"n_abc", 300.0},       {"parser_roundtrip", 30.0},
  };

  const SuiteReport report = run_suite(default_manifest());
  bool ok = report.results.size() == budgets.size();
  if (!ok) std::printf("registered check list does not match the expected fifteen criteria\n");

  double total = 0.0;
  for (std::size_t i = 0; i < report.results.size() && i < budgets.size(); ++i) {
    const CheckResult& r = report.results[i];
    const bool named = r.name == budgets[i].name;
    const bool in_time = r.seconds < budgets[i].seconds;
    const bool passed = r.passed && named && in_time;
    ok = ok && passed;
    total += r.seconds;
    std::printf("criterion %02zu [%s] %-18s %7.2fs of %5.0fs  %s\n", i + 1,
                passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, budgets[i].seconds,
                r.detail.c_str());
    if (r.passed && !in_time)
      std::printf("             time budget exceeded (%.2fs >= %.0fs)\n", r.seconds,
                  budgets[i].seconds);
  }
  std::printf("%s (total %.2fs)\n",
              ok ? "ACCEPTANCE: all 15 criteria passed" : "ACCEPTANCE: failures present", total);
  return ok ? 0 : 1;
}
