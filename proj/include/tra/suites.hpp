#pragma once

// Named validation suites: each runs a fixed list of checks and reports the
// measured error against its threshold.

#include <string>
#include <vector>

namespace tra {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

/// Suites: coulomb, ortho, lommel, recursion, ode.
std::vector<std::string> suite_names();

/// Throws InvalidArgument for an unknown suite name.
SuiteReport run_suite(const std::string& name);

}  // namespace tra
