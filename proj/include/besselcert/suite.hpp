#pragma once

// Named end-to-end checks of the library's certified properties, grouped by
// acceptance criterion number.

#include <cstdint>
#include <string>
#include <vector>

namespace besselcert {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 12345;
  /// Random pairs per inequality family.
  int pairs = 1000;
};

/// Runs every check in criterion order; exceptions inside a check mark it failed.
std::vector<CheckResult> run_suite(const SuiteOptions& options = {});

/// Whether every check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace besselcert
