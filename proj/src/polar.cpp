#include "fcone/polar.hpp"

#include <map>
#include <set>
#include <sstream>

#include "fcone/paving.hpp"

namespace fcone {

namespace {

std::set<std::pair<std::size_t, std::size_t>> dedupe(const PairSet& u) {
    return {u.pairs.begin(), u.pairs.end()};
}

std::map<std::size_t, std::size_t> positions(const std::vector<std::size_t>& indices) {
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < indices.size(); ++i)
        pos[indices[i]] = i;
    return pos;
}

}  // namespace

Rational max_mass_on(const PairSet& u, const Instance& inst, const Rational& delta) {
    TransportSystem sys = assemble_transport_lp(inst, delta);
    const auto row_pos = positions(sys.from);
    const auto col_pos = positions(sys.to);

    for (const auto& [x, y] : dedupe(u)) {
        auto xi = row_pos.find(x);
        auto yj = col_pos.find(y);
        if (xi != row_pos.end() && yj != col_pos.end())
            sys.lp.objective[sys.plan_var(xi->second, yj->second)] = 1;
    }

    const LPOutcome out = solve_lp(sys.lp);
    if (out.status == LPStatus::Infeasible)
        throw NotInOrderError("no feasible transport at this defect level");
    if (out.status != LPStatus::Optimal)
        throw MalformedProgram("plan mass maximization came back unbounded");
    return out.value;
}

Rational max_coupling_mass(const PairSet& u, const DiscreteMeasure& mu,
                           const DiscreteMeasure& nu) {
    const std::vector<std::size_t> from = mu.support();
    const std::vector<std::size_t> to = nu.support();
    const auto row_pos = positions(from);
    const auto col_pos = positions(to);

    LinearProgram lp;
    lp.num_vars = static_cast<int>(from.size() * to.size());
    lp.objective.assign(from.size() * to.size(), Rational(0));
    lp.bounds.assign(from.size() * to.size(), VarBound::NonNegative);
    for (std::size_t xi = 0; xi < from.size(); ++xi) {
        LinearRow row;
        for (std::size_t yj = 0; yj < to.size(); ++yj)
            row.coeffs.push_back({static_cast<int>(xi * to.size() + yj), Rational(1)});
        row.sense = Sense::EQ;
        row.rhs = mu.mass(from[xi]);
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t yj = 0; yj < to.size(); ++yj) {
        LinearRow col;
        for (std::size_t xi = 0; xi < from.size(); ++xi)
            col.coeffs.push_back({static_cast<int>(xi * to.size() + yj), Rational(1)});
        col.sense = Sense::EQ;
        col.rhs = nu.mass(to[yj]);
        lp.rows.push_back(std::move(col));
    }

    for (const auto& [x, y] : dedupe(u)) {
        auto xi = row_pos.find(x);
        auto yj = col_pos.find(y);
        if (xi != row_pos.end() && yj != col_pos.end())
            lp.objective[xi->second * to.size() + yj->second] = 1;
    }

    const LPOutcome out = solve_lp(lp);
    if (out.status != LPStatus::Optimal)
        throw MalformedProgram("coupling polytope should never be empty or unbounded");
    return out.value;
}

bool is_trivially_polar(const PairSet& u, const DiscreteMeasure& mu,
                        const DiscreteMeasure& nu) {
    for (const auto& [x, y] : u.pairs)
        if (mu.mass(x) > 0 && nu.mass(y) > 0)
            return false;
    return true;
}

PolarReport check_polar_theorem(const PairSet& u, const Instance& inst, const Rational& delta) {
    PolarReport report;
    report.delta = delta;
    report.max_mass = max_mass_on(u, inst, delta);
    report.plain_max = max_coupling_mass(u, inst.mu, inst.nu);
    report.polar = report.max_mass == 0;
    report.plain_polar = report.plain_max == 0;
    report.trivial = is_trivially_polar(u, inst.mu, inst.nu);

    if (delta == 0) {
        bool needs_paving = false;
        for (const auto& [x, y] : u.pairs)
            if (inst.mu.mass(x) > 0)
                needs_paving = true;
        if (needs_paving) {
            const Paving paving = build_paving(inst, Rational(0));
            for (const auto& [x, y] : dedupe(u)) {
                if (inst.mu.mass(x) == 0)
                    continue;
                const PavingClass& cls = paving.classes[paving.atom_class.at(x)];
                if (!rint_contains(cls.component, inst.gens.phi(y))) {
                    std::ostringstream msg;
                    msg << "pair (" << inst.ground.point(x).id << ", " << inst.ground.point(y).id
                        << ") leaves the relative interior of the source component";
                    throw SectionHypothesisViolated(msg.str());
                }
            }
        }
        report.section_checked = true;
        report.equivalence_holds = report.polar == report.trivial;
    } else {
        report.equivalence_holds =
            report.polar == report.plain_polar && report.plain_polar == report.trivial;
    }
    return report;
}

}  // namespace fcone
