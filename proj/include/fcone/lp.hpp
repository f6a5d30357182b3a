#pragma once

#include <memory>
#include <utility>

#include "fcone/rational.hpp"

namespace fcone {

// Exact-arithmetic linear programs, always stated as maximization.
//
// A program is: maximize c.x subject to row constraints a_i.x {<=,=,>=} b_i,
// with each variable either nonnegative or free. Rows are stored sparsely.
// solve_lp pivots with Bland's rule over a fixed column order, so equal
// inputs produce identical outcomes, certificates included.

enum class Sense { LE, EQ, GE };
enum class VarBound { NonNegative, Free };

struct LinearRow {
    std::vector<std::pair<int, Rational>> coeffs;  // (variable index, value)
    Sense sense = Sense::EQ;
    Rational rhs;
};

struct LinearProgram {
    int num_vars = 0;
    Vec objective;                  // size num_vars
    std::vector<LinearRow> rows;
    std::vector<VarBound> bounds;   // size num_vars

    // dimension/index sanity; throws MalformedProgram
    void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

// Optimal    -> value, primal (per variable), dual (per row)
// Infeasible -> farkas (per row)
// Unbounded  -> ray (per variable) plus primal as a feasible base point
//
// sign conventions, all in the original row space:
//   dual:   y_i >= 0 on <=, y_i <= 0 on >=, free on =;
//           (A^T y)_j >= c_j for nonnegative x_j, = c_j for free x_j;
//           b.y = c.x = value (strong duality, exact)
//   farkas: F_i <= 0 on <=, F_i >= 0 on >=, free on =;
//           (A^T F)_j <= 0 for nonnegative x_j, = 0 for free x_j; F.b > 0
//   ray:    a_i.r <= 0 on <=, >= 0 on >=, = 0 on =; r_j >= 0 for
//           nonnegative x_j; c.r > 0
struct LPOutcome {
    LPStatus status = LPStatus::Optimal;
    Rational value;
    Vec primal;
    Vec dual;
    Vec farkas;
    Vec ray;
};

LPOutcome solve_lp(const LinearProgram& lp);

// re-derives every claim of the outcome from the program alone, with no
// shared state with the solver. returns false on any violation; never throws.
bool verify_certificate(const LinearProgram& lp, const LPOutcome& outcome);

// Incremental interface used where many objectives share one feasible system:
// phase 1 runs once, then each maximize() copies the feasible tableau and runs
// phase 2. Outcomes are identical to solve_lp on the same program with the
// same objective.
class SimplexEngine {
public:
    explicit SimplexEngine(const LinearProgram& lp);

    bool feasible() const { return feasible_; }

    // only meaningful when !feasible()
    Vec farkas() const;

    // requires feasible(); objective has lp.num_vars entries
    LPOutcome maximize(const Vec& objective) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    bool feasible_ = false;
};

}  // namespace fcone
