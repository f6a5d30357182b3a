#pragma once

#include <cstddef>
#include <vector>

#include "fcone/order.hpp"

namespace fcone {

// Plain optimal transport on a finite metric space: exact Kantorovich
// duality, and the decomposition of the ground set into transport rays read
// off a fixed potential.

struct MetricInstance {
    GroundSet ground;
    Mat metric;  // symmetric, zero diagonal, positive off it, triangle inequality
    DiscreteMeasure mu;
    DiscreteMeasure nu;

    // validates the metric axioms; InvalidMetric on any violation
    MetricInstance(GroundSet ground, Mat metric, DiscreteMeasure mu, DiscreteMeasure nu);
};

// pairwise distances from the coordinates. The euclidean variant insists on
// exact values and rejects the instance when any distance is irrational; the
// l1 variant always works over rational coordinates.
Mat euclidean_metric(const GroundSet& ground);
Mat l1_metric(const GroundSet& ground);

struct Potential {
    Vec values;  // by ground-point index
};

struct DualSolution {
    Potential potential;
    Rational value;
};

// maximizes ∫v d(ν-μ) over the 1-Lipschitz polytope; the optimum is the
// exact Wasserstein-1 distance. Ties between optimal potentials are broken
// by the solver's deterministic pivoting.
DualSolution kantorovich_potential(const MetricInstance& inst);

struct PrimalSolution {
    TransportPlan plan;
    Rational value;
};

// minimum-cost coupling; its value matches kantorovich_potential exactly.
PrimalSolution w1_primal(const MetricInstance& inst);

struct RayDecomposition {
    std::vector<std::vector<std::size_t>> rays;  // each ascending; list ordered lexicographically
    std::vector<std::size_t> branch_points;      // points lying in more than one ray
};

// Rays are the maximal cliques of the tightness relation
// |v(a) - v(b)| = d(a, b); a point tight with nothing becomes a singleton
// ray. The potential must be 1-Lipschitz (NotLipschitz otherwise).
RayDecomposition transport_rays(const MetricInstance& inst, const Potential& v);

struct BalanceReport {
    std::vector<Rational> differences;  // μ(R) - ν(R) per ray, in ray order
    bool applicable = false;            // no branch points: rays partition the points
    bool balanced = false;              // applicable and every difference is zero
};

BalanceReport ray_mass_balance(const MetricInstance& inst, const RayDecomposition& rays);

}  // namespace fcone
