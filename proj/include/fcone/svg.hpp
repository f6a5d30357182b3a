#pragma once

#include <string>

#include "fcone/paving.hpp"

namespace fcone {

// Picture of a paving for 1- or 2-dimensional ground sets: every ground
// point as a dot, class supports colored per class, class hulls outlined.
// Rendering is the one place where values are converted to floats.
std::string paving_svg(const Instance& inst, const Paving& paving);

}  // namespace fcone
