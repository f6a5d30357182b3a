#pragma once

#include <cstddef>
#include <vector>

#include "fcone/ground.hpp"
#include "fcone/lp.hpp"

namespace fcone {

// Couplings of (μ, ν) constrained to be one-step submartingales along every
// generator direction, exactly at level delta = 0 and with a bounded
// positive-part defect at delta > 0.

struct TransportPlan {
    std::vector<std::size_t> from;  // μ-support ground indices, row per entry
    std::vector<std::size_t> to;    // ν-support ground indices, column per entry
    Mat pi;                         // from.size() × to.size(), entrywise ≥ 0
    Rational delta = 0;
};

// The assembled feasibility system, kept together with enough labeling to
// read certificates back in row order.
//
// Variables: plan entries first, x-major over from × to; for delta > 0 one
// slack block per effective generator follows (atom-major inside a block).
// Rows: per-from row sums (=), per-to column sums (=), then generator rows.
// At delta = 0 each generator contributes one row per from-atom (= when the
// generator is lineal, ≥ otherwise), generator-major. At delta > 0 the
// effective list is G followed by the negations of the declared-symmetric
// members; each effective generator contributes its per-atom defect rows
// (≥, with the slack added on the left) and then one slack budget row
// (≤ delta times the generator's growth norm against weight p + 1).
struct TransportSystem {
    LinearProgram lp;
    std::vector<std::size_t> from;
    std::vector<std::size_t> to;
    Rational delta;

    struct EffGen {
        std::size_t gen;  // index into the generator set
        bool negated;
    };
    std::vector<EffGen> eff;

    int plan_var(std::size_t xi, std::size_t yj) const {
        return static_cast<int>(xi * to.size() + yj);
    }
    std::size_t n_plan_vars() const { return from.size() * to.size(); }
    std::size_t marginal_rows() const { return from.size() + to.size(); }
};

TransportSystem assemble_transport_lp(const Instance& inst, const Rational& delta);

struct OrderVerdict {
    bool in_order = false;
    TransportPlan witness;  // when in_order
    Vec certificate;        // when not: Farkas coefficient per assembled row
};

// Strassen-type decision: a feasible plan exists iff μ precedes ν in the
// order induced by the generator cone at the given defect level.
OrderVerdict check_f_order(const Instance& inst, const Rational& delta);

// The separating lattice-cone function implied by a rejection certificate at
// delta = 0: f(ω) = max over from-atoms x of [alpha_x + Σ_g gamma_{g,x} g(ω)].
struct SeparatingFunction {
    std::vector<std::size_t> atoms;  // one max-term per μ-support atom
    Vec alpha;                       // constant of each term
    Mat gamma;                       // per term, coefficient per generator
    Vec values;                      // f evaluated at every ground point
    Rational mu_integral;
    Rational nu_integral;
};

// Re-derives everything the certificate claims from the instance alone:
// row-sign admissibility, the strict Farkas contraction, and at delta = 0
// the separating function with its strict integral gap. Never throws on a
// bad certificate; it just returns false.
bool verify_order_certificate(const Instance& inst, const Rational& delta, const Vec& certificate,
                              SeparatingFunction* separating = nullptr);

// Direct feasibility check of a concrete plan against the instance at the
// plan's own defect level (marginals, nonnegativity, and either the exact
// per-generator rows at delta = 0 or the positive-part budget at delta > 0).
bool plan_feasible(const Instance& inst, const TransportPlan& plan);

struct SupportResult {
    TransportPlan plan;                     // average of all per-pair maximizers
    std::vector<std::vector<bool>> support; // true iff some feasible plan charges the pair
    Mat pair_max;                           // exact per-pair maxima
};

// Per-pair mass maximization over the feasible polytope; the returned plan is
// the uniform average of the maximizers, so its support realizes the union.
SupportResult maximal_support_plan(const Instance& inst, const Rational& delta);

}  // namespace fcone
