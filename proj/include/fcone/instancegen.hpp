#pragma once

#include <cstdint>

#include "fcone/ground.hpp"

namespace fcone {

// Deterministic 64-bit stream (splitmix64) so sampled instances are
// reproducible across platforms; the standard distributions are not pinned
// down by the standard, so they are avoided on purpose.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], inclusive
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin() { return (next() & 1) != 0; }
};

struct RandomInstanceOptions {
    std::size_t max_points = 8;
    std::size_t max_side = 6;       // atoms per marginal
    std::size_t max_generators = 3; // affine directions before negations
    std::size_t max_dim = 2;
    Weight weight = Weight::One;
};

// One random instance per seed: small integer ground points in dimension 1
// or 2, a mix of one-sided and explicitly negated affine generators, and a
// target measure that is either drawn freely or pushed forward from μ
// through per-atom kernels solved against the cone (the latter guarantees
// the order holds, keeping both verdicts well represented in any seed range).
Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& opts = {});

}  // namespace fcone
