#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spl {

struct PropertyResult {
  std::string module, name;
  std::uint64_t cases = 0, violations = 0;
  std::string first_failure;
};

struct PropertyOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 200000000;  // generation tests per group table
  bool include_slow = true;          // the A_9 class scan (about half a minute)
};

// randomized invariant checks over every module, deterministic for a seed
std::vector<PropertyResult> run_property_suite(const PropertyOptions& opt = {});

}  // namespace spl
