#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fcone/order.hpp"

namespace fcone {

// Pair sets live on the full ground grid; pairs outside supp μ × supp ν can
// never be charged and simply contribute nothing to the mass maxima.
struct PairSet {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (from, to) ground indices
};

// Exact maximum of the total plan mass on u over the feasible polytope at the
// given defect level. NotInOrderError when that polytope is empty.
Rational max_mass_on(const PairSet& u, const Instance& inst, const Rational& delta);

// The same maximum over plain couplings of (μ, ν), with no generator rows.
Rational max_coupling_mass(const PairSet& u, const DiscreteMeasure& mu,
                           const DiscreteMeasure& nu);

// true iff u is covered by a μ-null row set and a ν-null column set.
bool is_trivially_polar(const PairSet& u, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct PolarReport {
    Rational delta;
    Rational max_mass;        // over the δ-feasible polytope
    Rational plain_max;       // over unconstrained couplings
    bool polar = false;       // max_mass == 0
    bool plain_polar = false; // plain_max == 0
    bool trivial = false;
    bool section_checked = false;  // δ = 0 branch ran the hypothesis check
    bool equivalence_holds = false;
};

// At δ = 0 first verifies the section hypothesis (the image of every
// positive-μ row of u lies in the relative interior of that atom's
// component), then records whether polarity and trivial polarity agree.
// At δ > 0 no hypothesis is needed and the recorded equivalence is
// three-way: δ-polar, plain-coupling polar, trivially polar.
PolarReport check_polar_theorem(const PairSet& u, const Instance& inst, const Rational& delta);

}  // namespace fcone
