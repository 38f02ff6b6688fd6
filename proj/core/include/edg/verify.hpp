#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace edg {

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;   ///< worst error or measured value
  double tolerance = 0.0;
  std::string detail;
};

/// Dual-basis identities, operator equivalences and the dense RIP oracle,
/// each compared against brute-force constructions.
std::vector<CheckResult> run_property_suite(std::uint64_t seed = 1);

}  // namespace edg
