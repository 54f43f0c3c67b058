#pragma once

// The invariant suites behind `cfgring selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace cfgring {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string detail;  // first failure
};

struct SelftestOptions {
  /// Largest ring enumerated by the exhaustive suites.
  std::uint64_t exhaustive_cap = 4096;
  std::uint64_t seed = 1;
  std::uint64_t random_cases = 1000;
  std::uint64_t roundtrip_cases = 10000;
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts = {});

}  // namespace cfgring
