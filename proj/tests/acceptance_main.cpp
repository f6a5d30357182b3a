// Prints one line per release gate and exits nonzero if any fails. The
// gates sample from the pinned default stream so reruns are reproducible.

#include <cstdio>

#include "fcone/selfcheck.hpp"

int main() {
    bool all = true;
    std::size_t index = 0;
    for (const fcone::CheckResult& r : fcone::run_selfcheck(0)) {
        ++index;
        std::printf("%2zu %-18s %s  %s\n", index, r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
