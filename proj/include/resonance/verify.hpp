#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace resonance {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// The full acceptance suite: each check pins its own tolerances and builds
// its own inputs, so any one can run in isolation.  Checks are numbered
// 1..11 in the order they are defined.
CheckResult run_acceptance_check(int id, std::uint64_t seed, int threads);
std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed, int threads);

inline constexpr int kAcceptanceCheckCount = 11;

}  // namespace resonance
