#include "fcone/paving.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fcone/linalg.hpp"

namespace fcone {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

void unite(std::vector<std::size_t>& parent, std::size_t a, std::size_t b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a == b)
        return;
    if (a < b)
        parent[b] = a;
    else
        parent[a] = b;
}

}  // namespace

Polytope component(const std::vector<std::size_t>& support, const GeneratorSet& gs) {
    if (support.empty())
        throw EmptySupport();
    Mat images;
    for (std::size_t y : support)
        images.push_back(gs.phi(y));
    return make_polytope(images);
}

Paving build_paving(const Instance& inst, const Rational& delta) {
    const SupportResult sup = maximal_support_plan(inst, delta);
    const std::vector<std::size_t>& atoms = sup.plan.from;
    const std::size_t m = atoms.size();

    std::vector<std::vector<std::size_t>> rows(m);
    std::vector<Polytope> pieces;
    pieces.reserve(m);
    for (std::size_t xi = 0; xi < m; ++xi) {
        for (std::size_t yj = 0; yj < sup.plan.to.size(); ++yj)
            if (sup.support[xi][yj])
                rows[xi].push_back(sup.plan.to[yj]);
        pieces.push_back(component(rows[xi], inst.gens));
    }

    std::vector<std::size_t> parent(m);
    for (std::size_t i = 0; i < m; ++i)
        parent[i] = i;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (rint_intersects(pieces[i], pieces[j]))
                unite(parent, i, j);

    std::map<std::size_t, std::vector<std::size_t>> grouped;  // root -> positions
    for (std::size_t i = 0; i < m; ++i)
        grouped[find_root(parent, i)].push_back(i);

    Paving out;
    out.delta = delta;
    for (const auto& [root, members] : grouped) {
        PavingClass cls;
        std::set<std::size_t> merged_targets;
        for (std::size_t pos : members) {
            cls.atoms.push_back(atoms[pos]);
            cls.supports[atoms[pos]] = rows[pos];
            merged_targets.insert(rows[pos].begin(), rows[pos].end());
        }
        cls.component = component(
            std::vector<std::size_t>(merged_targets.begin(), merged_targets.end()), inst.gens);

        for (std::size_t pos : members) {
            if (!hull_equal(pieces[pos], cls.component)) {
                std::ostringstream msg;
                msg << "atom " << inst.ground.point(atoms[pos]).id
                    << " shares a relative interior with its class but not the hull";
                throw DichotomyViolation(msg.str());
            }
        }

        out.classes.push_back(std::move(cls));
    }

    for (std::size_t a = 0; a < out.classes.size(); ++a)
        for (std::size_t b = a + 1; b < out.classes.size(); ++b)
            if (rint_intersects(out.classes[a].component, out.classes[b].component)) {
                std::ostringstream msg;
                msg << "classes " << a << " and " << b
                    << " ended up distinct yet with intersecting relative interiors";
                throw DichotomyViolation(msg.str());
            }

    for (std::size_t c = 0; c < out.classes.size(); ++c)
        for (std::size_t atom : out.classes[c].atoms)
            out.atom_class[atom] = c;
    return out;
}

bool BMembershipReport::all_pass() const {
    for (bool p : pass)
        if (!p)
            return false;
    return true;
}

BMembershipReport check_b_membership(const Paving& paving, const Instance& inst) {
    const GeneratorSet& gs = inst.gens;
    BMembershipReport report;
    for (const PavingClass& cls : paving.classes)
        for (std::size_t atom : cls.atoms)
            report.atoms.push_back(atom);
    std::sort(report.atoms.begin(), report.atoms.end());

    // maximal independent family among the two-sided generators, input order
    Mat picked;
    for (std::size_t k = 0; k < gs.count(); ++k) {
        if (!gs.lineality_flags()[k])
            continue;
        Mat trial = picked;
        trial.push_back(gs.generators()[k].values);
        if (rank(trial) > rank(picked))
            picked = std::move(trial);
    }

    report.lineality_trivial = picked.empty();
    report.fully_lineal = gs.fully_lineal();
    if (report.lineality_trivial && !report.fully_lineal) {
        report.pass.assign(report.atoms.size(), true);
        return report;
    }

    // each picked generator as a linear functional of the evaluation
    // coordinates: c with c . Phi(w) = g(w) for every ground point w
    Mat basis_t(gs.n_points(), Vec(gs.dim()));
    for (std::size_t k = 0; k < gs.dim(); ++k)
        for (std::size_t w = 0; w < gs.n_points(); ++w)
            basis_t[w][k] = gs.basis()[k][w];
    Mat functionals;
    for (const Vec& values : picked) {
        auto c = solve_linear(basis_t, values);
        if (!c)
            throw MalformedProgram("two-sided generator escaped the evaluation span");
        functionals.push_back(std::move(*c));
    }

    auto project = [&](const Vec& u) {
        Vec p;
        p.reserve(functionals.size());
        for (const Vec& c : functionals) {
            Rational v = 0;
            for (std::size_t k = 0; k < c.size(); ++k)
                v += c[k] * u[k];
            p.push_back(std::move(v));
        }
        return p;
    };

    for (std::size_t atom : report.atoms) {
        const PavingClass& cls = paving.classes[paving.atom_class.at(atom)];
        bool ok = true;
        if (!picked.empty()) {
            Mat shadow;
            for (const Vec& v : cls.component.vertices)
                shadow.push_back(project(v));
            ok = hull_contains(make_polytope(shadow), project(gs.phi(atom)));
        }
        if (ok && report.fully_lineal)
            ok = rint_contains(cls.component, gs.phi(atom));
        report.pass.push_back(ok);
    }
    return report;
}

ApircPaving build_apirc(const Instance& inst, const std::vector<std::vector<std::size_t>>& subsets) {
    if (subsets.empty())
        throw EmptySet("no generator subsets given");

    const OrderVerdict full = check_f_order(inst, Rational(0));
    if (!full.in_order)
        throw NotInOrderError("the measures are not ordered for the full generator cone");

    ApircPaving out;
    out.subsets = subsets;
    for (const std::vector<std::size_t>& z : subsets) {
        GeneratorSet sub = inst.gens.subset(z);
        Instance restricted{inst.ground, inst.mu, inst.nu, sub, inst.weight};
        out.pavings.push_back(build_paving(restricted, Rational(0)));
        out.sub_gens.push_back(std::move(sub));
    }

    // meet of the per-subset partitions: atoms agreeing everywhere share a class
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_label;
    for (std::size_t atom : inst.mu.support()) {
        std::vector<std::size_t> label;
        label.reserve(out.pavings.size());
        for (const Paving& p : out.pavings)
            label.push_back(p.atom_class.at(atom));
        by_label[label].push_back(atom);
    }
    for (auto& [label, members] : by_label)
        out.joint_classes.push_back(members);
    std::sort(out.joint_classes.begin(), out.joint_classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t c = 0; c < out.joint_classes.size(); ++c)
        for (std::size_t atom : out.joint_classes[c])
            out.atom_joint[atom] = c;

    // every full-cone supported pair must project into the closed per-subset
    // component of its source atom
    const SupportResult sup = maximal_support_plan(inst, Rational(0));
    out.supp_inclusion = true;
    for (std::size_t xi = 0; xi < sup.plan.from.size() && out.supp_inclusion; ++xi)
        for (std::size_t yj = 0; yj < sup.plan.to.size() && out.supp_inclusion; ++yj) {
            if (!sup.support[xi][yj])
                continue;
            for (std::size_t zi = 0; zi < out.pavings.size(); ++zi) {
                const Paving& p = out.pavings[zi];
                const PavingClass& cls = p.classes[p.atom_class.at(sup.plan.from[xi])];
                if (!hull_contains(cls.component, out.sub_gens[zi].phi(sup.plan.to[yj]))) {
                    out.supp_inclusion = false;
                    break;
                }
            }
        }
    return out;
}

}  // namespace fcone
