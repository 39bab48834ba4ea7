#pragma once

#include <cstdint>

#include "twocat/serialize.hpp"

namespace twocat {

struct SelftestReport {
  ser::json payload;  // {seed, checks: [{name, ok, instances}, ...]}
  bool all_passed = false;
};

// Deterministic cross-module property battery.  Every check draws from one
// Rng seeded by `seed`, touches no files, and reports exact results, so two
// runs with the same seed serialize to identical bytes.
SelftestReport selftest_battery(std::uint64_t seed);

}  // namespace twocat
