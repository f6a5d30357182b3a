#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fcone/jsonio.hpp"

namespace fcone {

// One CLI invocation with its inputs already parsed. Keeping this separate
// from argument handling lets tests and the self-check drive the exact same
// code path the binary runs.
struct RunConfig {
    std::string command;
    Json input;            // instance document (metric instance for rays)
    Json pairs;            // polar: {"pairs": [...]}
    Json subsets;          // apirc: [[indices], ...]
    std::string scenario;  // scenario command: the preset name
    std::string metric;    // rays: use this metric instead of the input's
    std::string weight;    // override the instance weight: one or one_plus_maxnorm
    Rational delta;
    bool emit_json = true;
    bool emit_csv = false;
    bool emit_svg = false;
};

struct RunResult {
    int exit_code = 0;  // 0 success, 2 mathematical negative (with certificate)
    std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> bytes
};

// Executes one command. Deterministic: identical config gives identical
// artifact bytes. Malformed input throws (ParseError, SchemaError, ...);
// the binary maps that to exit 1.
RunResult run(const RunConfig& cfg);

}  // namespace fcone
