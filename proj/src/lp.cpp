#include "fcone/lp.hpp"

#include <cstddef>

#include "fcone/errors.hpp"

namespace fcone {

void LinearProgram::validate() const {
    if (num_vars < 0) throw MalformedProgram("negative variable count");
    if (objective.size() != static_cast<std::size_t>(num_vars))
        throw MalformedProgram("objective size does not match variable count");
    if (bounds.size() != static_cast<std::size_t>(num_vars))
        throw MalformedProgram("bounds size does not match variable count");
    for (const LinearRow& row : rows) {
        for (const auto& [idx, coef] : row.coeffs) {
            (void)coef;
            if (idx < 0 || idx >= num_vars)
                throw MalformedProgram("row references a variable out of range");
        }
    }
}

namespace {

// dense constraint matrix in original space; duplicate indices add up
Mat dense_matrix(const LinearProgram& lp) {
    Mat a(lp.rows.size(), Vec(lp.num_vars, Rational(0)));
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        for (const auto& [idx, coef] : lp.rows[i].coeffs) a[i][idx] += coef;
    }
    return a;
}

Rational dot(const Vec& a, const Vec& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// simplex core
//
// standard form: every original variable contributes a nonnegative "plus"
// column and, when free, an adjacent "minus" column; <=/>= rows get one
// slack/surplus column; rows are sign-normalized so the right-hand side is
// nonnegative; every row gets an artificial column, which is the initial
// basis. Bland's rule: entering column = smallest index with negative
// reduced cost among non-artificial columns, leaving row = minimum ratio
// with smallest-basic-index tie-break.
// ---------------------------------------------------------------------------

struct SimplexEngine::Impl {
    int m = 0;       // rows
    int nv = 0;      // original variables
    std::vector<Sense> senses;
    std::vector<VarBound> bounds;
    std::vector<int> plus_col;
    std::vector<int> minus_col;   // -1 for nonnegative variables
    std::vector<int> row_sign;    // +-1 applied to make rhs >= 0
    int art0 = 0;                 // first artificial column
    int n_cols = 0;               // columns excluding rhs
    Mat T;                        // m x (n_cols + 1), last column = rhs
    std::vector<int> basis;       // per row
    bool feasible = false;
    Vec farkas_orig;              // set when infeasible

    void build(const LinearProgram& lp);
    void pivot(int row, int col, Vec& qrow, Rational& qval);
    void init_cost_row(const Vec& c_std, Vec& qrow, Rational& qval) const;
    // returns true on optimal, false on unbounded (entering column in unb_col)
    bool run(Vec& qrow, Rational& qval, int& unb_col);
    void run_phase1();
    Vec standard_cost(const Vec& c_orig) const;
    Vec to_original(const Vec& x_std) const;
};

void SimplexEngine::Impl::build(const LinearProgram& lp) {
    m = static_cast<int>(lp.rows.size());
    nv = lp.num_vars;
    bounds = lp.bounds;
    senses.resize(m);
    for (int i = 0; i < m; ++i) senses[i] = lp.rows[i].sense;

    plus_col.resize(nv);
    minus_col.assign(nv, -1);
    int col = 0;
    for (int j = 0; j < nv; ++j) {
        plus_col[j] = col++;
        if (lp.bounds[j] == VarBound::Free) minus_col[j] = col++;
    }
    std::vector<int> slack_col(m, -1);
    for (int i = 0; i < m; ++i) {
        if (senses[i] != Sense::EQ) slack_col[i] = col++;
    }
    art0 = col;
    n_cols = art0 + m;

    T.assign(m, Vec(n_cols + 1, Rational(0)));
    row_sign.assign(m, 1);
    Mat a = dense_matrix(lp);
    for (int i = 0; i < m; ++i) {
        const Rational& b = lp.rows[i].rhs;
        const int s = b < 0 ? -1 : 1;
        row_sign[i] = s;
        for (int j = 0; j < nv; ++j) {
            if (a[i][j] == 0) continue;
            T[i][plus_col[j]] = s * a[i][j];
            if (minus_col[j] >= 0) T[i][minus_col[j]] = -s * a[i][j];
        }
        if (slack_col[i] >= 0) {
            const int slack_sign = senses[i] == Sense::LE ? 1 : -1;
            T[i][slack_col[i]] = s * slack_sign;
        }
        T[i][art0 + i] = 1;
        T[i][n_cols] = s * b;
    }
    basis.resize(m);
    for (int i = 0; i < m; ++i) basis[i] = art0 + i;
}

void SimplexEngine::Impl::pivot(int row, int col, Vec& qrow, Rational& qval) {
    Vec& pr = T[row];
    const Rational piv = pr[col];
    for (int j = 0; j <= n_cols; ++j) {
        if (pr[j] != 0) pr[j] /= piv;
    }
    for (int i = 0; i < m; ++i) {
        if (i == row) continue;
        const Rational f = T[i][col];
        if (f == 0) continue;
        Vec& ri = T[i];
        for (int j = 0; j <= n_cols; ++j) {
            if (pr[j] != 0) ri[j] -= f * pr[j];
        }
    }
    const Rational f = qrow[col];
    if (f != 0) {
        for (int j = 0; j < n_cols; ++j) {
            if (pr[j] != 0) qrow[j] -= f * pr[j];
        }
        qval -= f * pr[n_cols];
    }
    basis[row] = col;
}

void SimplexEngine::Impl::init_cost_row(const Vec& c_std, Vec& qrow, Rational& qval) const {
    qrow.assign(n_cols, Rational(0));
    qval = 0;
    for (int i = 0; i < m; ++i) {
        const Rational& cb = c_std[basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j < n_cols; ++j) {
            if (T[i][j] != 0) qrow[j] += cb * T[i][j];
        }
        qval += cb * T[i][n_cols];
    }
    for (int j = 0; j < n_cols; ++j) qrow[j] -= c_std[j];
}

bool SimplexEngine::Impl::run(Vec& qrow, Rational& qval, int& unb_col) {
    for (;;) {
        int enter = -1;
        for (int j = 0; j < art0; ++j) {
            if (qrow[j] < 0) { enter = j; break; }
        }
        if (enter < 0) return true;

        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][n_cols] / T[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) { unb_col = enter; return false; }
        pivot(leave, enter, qrow, qval);
    }
}

void SimplexEngine::Impl::run_phase1() {
    Vec c1(n_cols, Rational(0));
    for (int i = 0; i < m; ++i) c1[art0 + i] = -1;

    Vec qrow;
    Rational qval;
    init_cost_row(c1, qrow, qval);
    int unb_col = -1;
    if (!run(qrow, qval, unb_col))
        throw MalformedProgram("phase 1 unbounded; arithmetic fault");

    if (qval < 0) {
        feasible = false;
        farkas_orig.assign(m, Rational(0));
        for (int i = 0; i < m; ++i) {
            farkas_orig[i] = row_sign[i] * (Rational(1) - qrow[art0 + i]);
        }
        return;
    }
    feasible = true;

    // drive basic artificials out with degenerate pivots; rows where every
    // non-artificial entry is zero are dependent and stay inert
    for (int i = 0; i < m; ++i) {
        if (basis[i] < art0) continue;
        int enter = -1;
        for (int j = 0; j < art0; ++j) {
            if (T[i][j] != 0) { enter = j; break; }
        }
        if (enter >= 0) pivot(i, enter, qrow, qval);
    }
}

Vec SimplexEngine::Impl::standard_cost(const Vec& c_orig) const {
    Vec c(n_cols, Rational(0));
    for (int j = 0; j < nv; ++j) {
        if (c_orig[j] == 0) continue;
        c[plus_col[j]] = c_orig[j];
        if (minus_col[j] >= 0) c[minus_col[j]] = -c_orig[j];
    }
    return c;
}

Vec SimplexEngine::Impl::to_original(const Vec& x_std) const {
    Vec x(nv, Rational(0));
    for (int j = 0; j < nv; ++j) {
        x[j] = x_std[plus_col[j]];
        if (minus_col[j] >= 0) x[j] -= x_std[minus_col[j]];
    }
    return x;
}

SimplexEngine::SimplexEngine(const LinearProgram& lp) {
    lp.validate();
    auto impl = std::make_shared<Impl>();
    impl->build(lp);
    impl->run_phase1();
    feasible_ = impl->feasible;
    impl_ = std::move(impl);
}

Vec SimplexEngine::farkas() const {
    return impl_->farkas_orig;
}

LPOutcome SimplexEngine::maximize(const Vec& objective) const {
    Impl w = *impl_;  // phase-1 state is shared; phase 2 works on a copy
    LPOutcome out;

    Vec c_std = w.standard_cost(objective);
    Vec qrow;
    Rational qval;
    w.init_cost_row(c_std, qrow, qval);
    int unb_col = -1;
    const bool optimal = w.run(qrow, qval, unb_col);

    Vec x_std(w.n_cols, Rational(0));
    for (int i = 0; i < w.m; ++i) x_std[w.basis[i]] = w.T[i][w.n_cols];

    if (optimal) {
        out.status = LPStatus::Optimal;
        out.value = qval;
        out.primal = w.to_original(x_std);
        out.dual.assign(w.m, Rational(0));
        for (int i = 0; i < w.m; ++i) {
            out.dual[i] = w.row_sign[i] * qrow[w.art0 + i];
        }
    } else {
        out.status = LPStatus::Unbounded;
        out.primal = w.to_original(x_std);
        Vec d_std(w.n_cols, Rational(0));
        d_std[unb_col] = 1;
        for (int i = 0; i < w.m; ++i) {
            if (w.T[i][unb_col] != 0) d_std[w.basis[i]] = -w.T[i][unb_col];
        }
        out.ray = w.to_original(d_std);
    }
    return out;
}

LPOutcome solve_lp(const LinearProgram& lp) {
    SimplexEngine engine(lp);
    if (!engine.feasible()) {
        LPOutcome out;
        out.status = LPStatus::Infeasible;
        out.farkas = engine.farkas();
        return out;
    }
    return engine.maximize(lp.objective);
}

// ---------------------------------------------------------------------------
// independent certificate checks (no solver state, original space only)
// ---------------------------------------------------------------------------

namespace {

bool check_primal_feasible(const LinearProgram& lp, const Mat& a, const Vec& x) {
    if (x.size() != static_cast<std::size_t>(lp.num_vars)) return false;
    for (int j = 0; j < lp.num_vars; ++j) {
        if (lp.bounds[j] == VarBound::NonNegative && x[j] < 0) return false;
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const Rational lhs = dot(a[i], x);
        const Rational& rhs = lp.rows[i].rhs;
        switch (lp.rows[i].sense) {
            case Sense::LE: if (!(lhs <= rhs)) return false; break;
            case Sense::EQ: if (!(lhs == rhs)) return false; break;
            case Sense::GE: if (!(lhs >= rhs)) return false; break;
        }
    }
    return true;
}

}  // namespace

bool verify_certificate(const LinearProgram& lp, const LPOutcome& outcome) {
    try {
        lp.validate();
    } catch (const MalformedProgram&) {
        return false;
    }
    const Mat a = dense_matrix(lp);
    const std::size_t m = lp.rows.size();

    switch (outcome.status) {
        case LPStatus::Optimal: {
            if (!check_primal_feasible(lp, a, outcome.primal)) return false;
            if (outcome.dual.size() != m) return false;
            for (std::size_t i = 0; i < m; ++i) {
                if (lp.rows[i].sense == Sense::LE && outcome.dual[i] < 0) return false;
                if (lp.rows[i].sense == Sense::GE && outcome.dual[i] > 0) return false;
            }
            for (int j = 0; j < lp.num_vars; ++j) {
                Rational t(0);
                for (std::size_t i = 0; i < m; ++i) {
                    if (a[i][j] != 0 && outcome.dual[i] != 0) t += outcome.dual[i] * a[i][j];
                }
                if (lp.bounds[j] == VarBound::Free) {
                    if (t != lp.objective[j]) return false;
                } else if (t < lp.objective[j]) {
                    return false;
                }
            }
            const Rational primal_value = dot(lp.objective, outcome.primal);
            Rational dual_value(0);
            for (std::size_t i = 0; i < m; ++i) dual_value += outcome.dual[i] * lp.rows[i].rhs;
            return primal_value == outcome.value && dual_value == outcome.value;
        }
        case LPStatus::Infeasible: {
            if (outcome.farkas.size() != m) return false;
            for (std::size_t i = 0; i < m; ++i) {
                if (lp.rows[i].sense == Sense::LE && outcome.farkas[i] > 0) return false;
                if (lp.rows[i].sense == Sense::GE && outcome.farkas[i] < 0) return false;
            }
            for (int j = 0; j < lp.num_vars; ++j) {
                Rational t(0);
                for (std::size_t i = 0; i < m; ++i) {
                    if (a[i][j] != 0 && outcome.farkas[i] != 0) t += outcome.farkas[i] * a[i][j];
                }
                if (lp.bounds[j] == VarBound::Free) {
                    if (t != 0) return false;
                } else if (t > 0) {
                    return false;
                }
            }
            Rational fb(0);
            for (std::size_t i = 0; i < m; ++i) fb += outcome.farkas[i] * lp.rows[i].rhs;
            return fb > 0;
        }
        case LPStatus::Unbounded: {
            if (!check_primal_feasible(lp, a, outcome.primal)) return false;
            if (outcome.ray.size() != static_cast<std::size_t>(lp.num_vars)) return false;
            for (int j = 0; j < lp.num_vars; ++j) {
                if (lp.bounds[j] == VarBound::NonNegative && outcome.ray[j] < 0) return false;
            }
            for (std::size_t i = 0; i < m; ++i) {
                const Rational adr = dot(a[i], outcome.ray);
                switch (lp.rows[i].sense) {
                    case Sense::LE: if (adr > 0) return false; break;
                    case Sense::EQ: if (adr != 0) return false; break;
                    case Sense::GE: if (adr < 0) return false; break;
                }
            }
            return dot(lp.objective, outcome.ray) > 0;
        }
    }
    return false;
}

}  // namespace fcone
