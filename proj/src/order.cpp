#include "fcone/order.hpp"

#include <algorithm>

namespace fcone {

TransportSystem assemble_transport_lp(const Instance& inst, const Rational& delta) {
    if (delta < 0)
        throw SchemaError("defect level must be nonnegative");

    TransportSystem sys;
    sys.delta = delta;
    sys.from = inst.mu.support();
    sys.to = inst.nu.support();

    const auto& gens = inst.gens.generators();
    const auto& flags = inst.gens.lineality_flags();
    const std::size_t m = sys.from.size();
    const std::size_t n = sys.to.size();

    for (std::size_t k = 0; k < gens.size(); ++k)
        sys.eff.push_back({k, false});
    if (delta > 0)
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (gens[k].declared_symmetric)
                sys.eff.push_back({k, true});

    const std::size_t n_plan = m * n;
    const std::size_t n_slack = delta > 0 ? sys.eff.size() * m : 0;
    sys.lp.num_vars = static_cast<int>(n_plan + n_slack);
    sys.lp.objective.assign(n_plan + n_slack, Rational(0));
    sys.lp.bounds.assign(n_plan + n_slack, VarBound::NonNegative);

    auto slack_var = [&](std::size_t e, std::size_t xi) {
        return static_cast<int>(n_plan + e * m + xi);
    };

    for (std::size_t xi = 0; xi < m; ++xi) {
        LinearRow row;
        for (std::size_t yj = 0; yj < n; ++yj)
            row.coeffs.push_back({sys.plan_var(xi, yj), Rational(1)});
        row.sense = Sense::EQ;
        row.rhs = inst.mu.mass(sys.from[xi]);
        sys.lp.rows.push_back(std::move(row));
    }
    for (std::size_t yj = 0; yj < n; ++yj) {
        LinearRow row;
        for (std::size_t xi = 0; xi < m; ++xi)
            row.coeffs.push_back({sys.plan_var(xi, yj), Rational(1)});
        row.sense = Sense::EQ;
        row.rhs = inst.nu.mass(sys.to[yj]);
        sys.lp.rows.push_back(std::move(row));
    }

    if (delta == 0) {
        for (const auto& eg : sys.eff) {
            const Vec& val = gens[eg.gen].values;
            for (std::size_t xi = 0; xi < m; ++xi) {
                LinearRow row;
                for (std::size_t yj = 0; yj < n; ++yj)
                    if (val[sys.to[yj]] != 0)
                        row.coeffs.push_back({sys.plan_var(xi, yj), val[sys.to[yj]]});
                row.sense = flags[eg.gen] ? Sense::EQ : Sense::GE;
                row.rhs = inst.mu.mass(sys.from[xi]) * val[sys.from[xi]];
                sys.lp.rows.push_back(std::move(row));
            }
        }
    } else {
        Vec wplus = weight_values(inst.ground, inst.weight);
        for (Rational& w : wplus)
            w += 1;
        for (std::size_t e = 0; e < sys.eff.size(); ++e) {
            Vec val = gens[sys.eff[e].gen].values;
            if (sys.eff[e].negated)
                for (Rational& v : val)
                    v = -v;
            for (std::size_t xi = 0; xi < m; ++xi) {
                LinearRow row;
                for (std::size_t yj = 0; yj < n; ++yj)
                    if (val[sys.to[yj]] != 0)
                        row.coeffs.push_back({sys.plan_var(xi, yj), val[sys.to[yj]]});
                row.coeffs.push_back({slack_var(e, xi), Rational(1)});
                row.sense = Sense::GE;
                row.rhs = inst.mu.mass(sys.from[xi]) * val[sys.from[xi]];
                sys.lp.rows.push_back(std::move(row));
            }
            LinearRow budget;
            for (std::size_t xi = 0; xi < m; ++xi)
                budget.coeffs.push_back({slack_var(e, xi), Rational(1)});
            budget.sense = Sense::LE;
            budget.rhs = delta * growth_norm(val, wplus);
            sys.lp.rows.push_back(std::move(budget));
        }
    }
    return sys;
}

namespace {

TransportPlan extract_plan(const TransportSystem& sys, const Vec& primal) {
    TransportPlan plan;
    plan.from = sys.from;
    plan.to = sys.to;
    plan.delta = sys.delta;
    plan.pi.assign(sys.from.size(), Vec(sys.to.size(), Rational(0)));
    for (std::size_t xi = 0; xi < sys.from.size(); ++xi)
        for (std::size_t yj = 0; yj < sys.to.size(); ++yj)
            plan.pi[xi][yj] = primal[sys.plan_var(xi, yj)];
    return plan;
}

}  // namespace

OrderVerdict check_f_order(const Instance& inst, const Rational& delta) {
    const TransportSystem sys = assemble_transport_lp(inst, delta);
    const LPOutcome out = solve_lp(sys.lp);
    OrderVerdict verdict;
    if (out.status == LPStatus::Optimal) {
        verdict.in_order = true;
        verdict.witness = extract_plan(sys, out.primal);
    } else if (out.status == LPStatus::Infeasible) {
        verdict.in_order = false;
        verdict.certificate = out.farkas;
    } else {
        throw MalformedProgram("feasibility system reported unbounded");
    }
    return verdict;
}

bool verify_order_certificate(const Instance& inst, const Rational& delta, const Vec& certificate,
                              SeparatingFunction* separating) {
    const TransportSystem sys = assemble_transport_lp(inst, delta);
    LPOutcome claim;
    claim.status = LPStatus::Infeasible;
    claim.farkas = certificate;
    if (!verify_certificate(sys.lp, claim))
        return false;
    if (delta != 0)
        return true;

    // read back the separating lattice-cone function: the row-sum duals are
    // the per-term constants, the generator-row duals the conic weights
    const std::size_t m = sys.from.size();
    const std::size_t n = sys.to.size();
    const auto& gens = inst.gens.generators();

    SeparatingFunction f;
    f.atoms = sys.from;
    f.alpha.resize(m);
    f.gamma.assign(m, Vec(gens.size(), Rational(0)));
    for (std::size_t xi = 0; xi < m; ++xi) {
        f.alpha[xi] = certificate[xi];
        for (std::size_t k = 0; k < gens.size(); ++k)
            f.gamma[xi][k] = certificate[m + n + k * m + xi];
    }
    f.values.resize(inst.ground.size());
    for (std::size_t w = 0; w < inst.ground.size(); ++w) {
        Rational best;
        for (std::size_t xi = 0; xi < m; ++xi) {
            Rational term = f.alpha[xi];
            for (std::size_t k = 0; k < gens.size(); ++k)
                term += f.gamma[xi][k] * gens[k].values[w];
            if (xi == 0 || term > best)
                best = term;
        }
        f.values[w] = best;
    }
    f.mu_integral = 0;
    f.nu_integral = 0;
    for (std::size_t w = 0; w < inst.ground.size(); ++w) {
        f.mu_integral += inst.mu.mass(w) * f.values[w];
        f.nu_integral += inst.nu.mass(w) * f.values[w];
    }
    const bool separated = f.mu_integral > f.nu_integral;
    if (separating)
        *separating = std::move(f);
    return separated;
}

bool plan_feasible(const Instance& inst, const TransportPlan& plan) {
    const std::size_t sz = inst.ground.size();
    if (plan.delta < 0)
        return false;

    // settle the plan onto the full ground grid so marginals can be compared
    // against the measures atom by atom
    Mat full(sz, Vec(sz, Rational(0)));
    if (plan.pi.size() != plan.from.size())
        return false;
    for (std::size_t xi = 0; xi < plan.from.size(); ++xi) {
        if (plan.pi[xi].size() != plan.to.size())
            return false;
        for (std::size_t yj = 0; yj < plan.to.size(); ++yj) {
            if (plan.from[xi] >= sz || plan.to[yj] >= sz)
                return false;
            if (plan.pi[xi][yj] < 0)
                return false;
            full[plan.from[xi]][plan.to[yj]] += plan.pi[xi][yj];
        }
    }
    for (std::size_t x = 0; x < sz; ++x) {
        Rational row_sum = 0;
        for (std::size_t y = 0; y < sz; ++y)
            row_sum += full[x][y];
        if (row_sum != inst.mu.mass(x))
            return false;
    }
    for (std::size_t y = 0; y < sz; ++y) {
        Rational col_sum = 0;
        for (std::size_t x = 0; x < sz; ++x)
            col_sum += full[x][y];
        if (col_sum != inst.nu.mass(y))
            return false;
    }

    const auto& gens = inst.gens.generators();
    const auto& flags = inst.gens.lineality_flags();
    if (plan.delta == 0) {
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const Vec& val = gens[k].values;
            for (std::size_t x = 0; x < sz; ++x) {
                if (inst.mu.mass(x) == 0)
                    continue;
                Rational lhs = 0;
                for (std::size_t y = 0; y < sz; ++y)
                    lhs += full[x][y] * val[y];
                const Rational rhs = inst.mu.mass(x) * val[x];
                if (flags[k] ? lhs != rhs : lhs < rhs)
                    return false;
            }
        }
        return true;
    }

    Vec wplus = weight_values(inst.ground, inst.weight);
    for (Rational& w : wplus)
        w += 1;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        for (int side = 0; side < (gens[k].declared_symmetric ? 2 : 1); ++side) {
            Vec val = gens[k].values;
            if (side == 1)
                for (Rational& v : val)
                    v = -v;
            Rational defect = 0;
            for (std::size_t x = 0; x < sz; ++x) {
                if (inst.mu.mass(x) == 0)
                    continue;
                Rational lhs = 0;
                for (std::size_t y = 0; y < sz; ++y)
                    lhs += full[x][y] * val[y];
                const Rational gap = inst.mu.mass(x) * val[x] - lhs;
                if (gap > 0)
                    defect += gap;
            }
            if (defect > plan.delta * growth_norm(val, wplus))
                return false;
        }
    }
    return true;
}

SupportResult maximal_support_plan(const Instance& inst, const Rational& delta) {
    const TransportSystem sys = assemble_transport_lp(inst, delta);
    const SimplexEngine engine(sys.lp);
    if (!engine.feasible())
        throw NotInOrderError();

    const std::size_t m = sys.from.size();
    const std::size_t n = sys.to.size();

    SupportResult result;
    result.support.assign(m, std::vector<bool>(n, false));
    result.pair_max.assign(m, Vec(n, Rational(0)));
    Mat sum(m, Vec(n, Rational(0)));

    Vec objective(sys.lp.num_vars, Rational(0));
    for (std::size_t xi = 0; xi < m; ++xi)
        for (std::size_t yj = 0; yj < n; ++yj) {
            objective[sys.plan_var(xi, yj)] = 1;
            const LPOutcome out = engine.maximize(objective);
            objective[sys.plan_var(xi, yj)] = 0;
            if (out.status != LPStatus::Optimal)
                throw MalformedProgram("pair mass maximization did not stay bounded");
            result.pair_max[xi][yj] = out.value;
            result.support[xi][yj] = out.value > 0;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    sum[a][b] += out.primal[sys.plan_var(a, b)];
        }

    result.plan.from = sys.from;
    result.plan.to = sys.to;
    result.plan.delta = delta;
    result.plan.pi = std::move(sum);
    const Rational count = Rational(static_cast<long>(m * n));
    for (Vec& row : result.plan.pi)
        for (Rational& v : row)
            v /= count;
    return result;
}

}  // namespace fcone
