#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "takiff/rational.hpp"

namespace takiff {

/// One verification request: a registered check name plus numeric parameters.
/// Missing parameters fall back to the check's built-in defaults.
struct SuiteCheck {
  std::string name;
  std::map<std::string, Rational> params;
};

/// Ordered list of checks; the report preserves this order.
struct SuiteManifest {
  std::vector<SuiteCheck> checks;
};

/// Outcome of one check. detail states what was verified (with counts and
/// the truncation context) or the exact first discrepancy.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;  // wall time; never part of rendered reports
};

struct SuiteReport {
  std::vector<CheckResult> results;
  bool all_passed() const;
};

/// Names of all registered checks, in canonical order.
const std::vector<std::string>& registered_checks();

/// Manifest that runs every registered check with default parameters.
SuiteManifest default_manifest();

/// Reads a manifest from a JSON file: an array of {"name": ..., "params":
/// {...}} entries, where parameter values are integers or rational strings
/// such as "5/2". Throws InvalidParams on malformed input.
SuiteManifest load_manifest(const std::string& path);

/// Runs the checks in manifest order. Unknown names produce a failed entry;
/// an empty manifest yields an empty, passing report. Output is byte
/// deterministic for fixed inputs and seed.
SuiteReport run_suite(const SuiteManifest& manifest);

/// One line per check plus a summary line; timing is deliberately excluded
/// so identical inputs render identical bytes.
std::string report_text(const SuiteReport& report);

/// Random seed: the TAKIFF_SEED environment variable when set, else a fixed
/// constant.
std::uint64_t suite_seed();

}  // namespace takiff
