#pragma once

// Verification suites: named groups of exact checks run by `dtower verify`.
// Each check compares two expansions through a precision (whole q-powers) or
// asserts a derived constant, and reports what it found.

#include <functional>
#include <string>
#include <vector>

namespace dtower {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  int prec = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;
  /// One line per check: "PASS tower: <name>" followed by "  <detail>" when present.
  std::string to_string() const;
};

/// blocks, invariance, tower, d2, mde, independence, hecke-oracle, theta-oracle.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all", with identities checked through
/// q^prec. Checks fan out over `threads` workers (0 = hardware concurrency).
/// Throws std::invalid_argument for an unknown suite or prec < 0.
SuiteReport run_suite(const std::string& suite, int prec, unsigned threads = 0);

}  // namespace dtower
