#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "fcone/order.hpp"
#include "fcone/polytope.hpp"

namespace fcone {

// Partition of the μ-atoms into irreducible classes: atoms whose components
// (hulls of their maximal-support images under Φ) have intersecting relative
// interiors land in one class and must then share the component outright.

struct PavingClass {
    std::vector<std::size_t> atoms;  // ground indices, ascending
    Polytope component;              // hull over the union of the support rows
    std::map<std::size_t, std::vector<std::size_t>> supports;  // per-atom target indices
};

struct Paving {
    std::vector<PavingClass> classes;               // ordered by smallest atom
    std::map<std::size_t, std::size_t> atom_class;  // μ-atom index -> class position
    Rational delta = 0;
};

// Hull of the Φ-images of a support row.
Polytope component(const std::vector<std::size_t>& support, const GeneratorSet& gs);

// Builds per-atom components from the maximal support plan, merges by
// relative-interior intersection (union-find, smallest atom index wins), and
// asserts the equal-or-disjoint dichotomy: per-atom hulls inside a class all
// equal the merged hull, merged hulls of distinct classes have disjoint
// relative interiors. DichotomyViolation marks a counterexample candidate and
// is never expected to fire.
Paving build_paving(const Instance& inst, const Rational& delta = Rational(0));

// Per-atom verdicts for the lineality-projection membership check: the
// coordinates of Φ(x) along the two-sided generator directions must land in
// the matching projection of the closed component. With no two-sided
// generator the check is vacuous; with nothing else the membership sharpens
// to the relative interior.
struct BMembershipReport {
    std::vector<std::size_t> atoms;
    std::vector<bool> pass;
    bool lineality_trivial = false;
    bool fully_lineal = false;

    bool all_pass() const;
};

BMembershipReport check_b_membership(const Paving& paving, const Instance& inst);

// Pavings for a list of generator subsets plus their common refinement. Each
// subset Z gets its own evaluation map and paving; the joint classes are the
// meet of the per-subset partitions (atoms agreeing under every Z), ordered
// by smallest atom. supp_inclusion records whether every pair supported by
// some full-cone feasible plan projects into the closed per-subset component
// of its source atom, for every subset.
struct ApircPaving {
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<GeneratorSet> sub_gens;
    std::vector<Paving> pavings;
    std::vector<std::vector<std::size_t>> joint_classes;
    std::map<std::size_t, std::size_t> atom_joint;
    bool supp_inclusion = false;
};

ApircPaving build_apirc(const Instance& inst, const std::vector<std::vector<std::size_t>>& subsets);

}  // namespace fcone
