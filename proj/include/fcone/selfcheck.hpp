#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fcone {

// End-to-end release gates: each one exercises a published guarantee of the
// library on generated inputs, with exact arithmetic throughout. The
// acceptance runner prints one line per gate and fails if any is false.

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // counts, timings, or the first counterexample
};

// Runs every gate in order. The seed offsets the sampled instances; the
// default 0 is the pinned stream the acceptance run uses.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed = 0);

}  // namespace fcone
