#include "fcone/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "fcone/cli.hpp"
#include "fcone/errors.hpp"
#include "fcone/instancegen.hpp"
#include "fcone/order.hpp"
#include "fcone/paving.hpp"
#include "fcone/polar.hpp"
#include "fcone/raylocal.hpp"
#include "fcone/scenarios.hpp"

namespace fcone {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f ms", ms);
    return buf;
}

// first failure wins; later detail writes keep the counterexample intact
struct Gate {
    bool ok = true;
    std::string msg;

    void fail(const std::string& m) {
        if (ok) {
            ok = false;
            msg = m;
        }
    }
};

template <typename F>
CheckResult guarded(const std::string& name, F&& body) {
    CheckResult r;
    r.name = name;
    try {
        Gate gate;
        std::string detail = body(gate);
        r.pass = gate.ok;
        r.detail = gate.ok ? detail : gate.msg;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("unexpected exception: ") + e.what();
    }
    return r;
}

Rational rational_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

// ---------------------------------------------------------------------------
// gate 1: the one-step worked example with a point source

Instance point_source_example() {
    std::vector<GroundPoint> pts;
    for (const char* id : {"0", "1", "3/2", "2"})
        pts.push_back({id, {parse_rational(id)}});
    GroundSet ground(pts);
    DiscreteMeasure mu(ground, {{"0", Rational(1)}});
    Rational third = Rational(1) / 3;
    DiscreteMeasure nu(ground, {{"1", third}, {"3/2", third}, {"2", third}});
    GeneratorSpec x;
    x.kind = GenKind::Affine;
    x.affine_coeffs = {Rational(1)};
    return {ground, mu, nu, build_generator_set(ground, {x}), Weight::One};
}

std::string check_worked_example(Gate& gate) {
    auto t0 = Clock::now();
    Instance inst = point_source_example();

    OrderVerdict verdict = check_f_order(inst, 0);
    if (!verdict.in_order) gate.fail("point-source example rejected");
    if (verdict.in_order && !plan_feasible(inst, verdict.witness))
        gate.fail("witness plan infeasible");

    Paving paving = build_paving(inst, 0);
    if (paving.classes.size() != 1) gate.fail("expected a single class");
    if (gate.ok) {
        const Polytope& comp = paving.classes[0].component;
        const auto& labels = inst.gens.basis_labels();
        std::size_t xc =
            std::find(labels.begin(), labels.end(), "g0") - labels.begin();
        std::set<Rational> ends;
        for (const Vec& v : comp.vertices) ends.insert(v[xc]);
        if (comp.vertices.size() != 2 || ends != std::set<Rational>{Rational(1), Rational(2)})
            gate.fail("component endpoints are not {1, 2}");
        if (hull_contains(comp, inst.gens.phi(inst.ground.index_of("0"))))
            gate.fail("source point landed inside the component");
    }

    double ms = ms_since(t0);
    if (ms >= 1000) gate.fail("took " + fmt_ms(ms) + ", budget is 1 s");
    return "interval (1,2) reproduced, source excluded, " + fmt_ms(ms);
}

// ---------------------------------------------------------------------------
// gates 2-4 share one pool of sampled instances

struct SamplePool {
    std::vector<Instance> instances;
    std::vector<OrderVerdict> verdicts;
    std::map<std::size_t, Paving> pavings;  // in-order index -> paving
};

std::string check_order_decisions(Gate& gate, std::uint64_t seed, SamplePool& pool) {
    auto t0 = Clock::now();
    std::size_t in_order = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        Instance inst = random_instance(seed * 1000003ull + 1 + i);
        OrderVerdict v = check_f_order(inst, 0);
        if (v.in_order) {
            ++in_order;
            if (!plan_feasible(inst, v.witness))
                gate.fail("witness plan infeasible at instance " + std::to_string(i));
        } else if (!verify_order_certificate(inst, 0, v.certificate)) {
            gate.fail("rejection certificate failed at instance " + std::to_string(i));
        }

        // the solver's own outcome, re-derived with no shared state
        TransportSystem ts = assemble_transport_lp(inst, 0);
        LPOutcome out = solve_lp(ts.lp);
        if (!verify_certificate(ts.lp, out))
            gate.fail("lp certificate failed at instance " + std::to_string(i));
        if ((out.status == LPStatus::Infeasible) == v.in_order)
            gate.fail("verdict disagrees with lp status at instance " + std::to_string(i));

        pool.instances.push_back(std::move(inst));
        pool.verdicts.push_back(std::move(v));
    }
    double ms = ms_since(t0);
    if (ms >= 60000) gate.fail("took " + fmt_ms(ms) + ", budget is 60 s");
    std::ostringstream os;
    os << in_order << " accepted / " << (200 - in_order)
       << " rejected, every certificate verified, " << fmt_ms(ms);
    return os.str();
}

std::string check_dichotomy(Gate& gate, SamplePool& pool) {
    std::size_t checked = 0, classes = 0;
    for (std::size_t i = 0; i < pool.instances.size(); ++i) {
        if (!pool.verdicts[i].in_order) continue;
        const Instance& inst = pool.instances[i];
        Paving paving;
        try {
            paving = build_paving(inst, 0);
        } catch (const DichotomyViolation& e) {
            gate.fail("dichotomy violation at instance " + std::to_string(i) + ": " + e.what());
            continue;
        }
        // cross-class: relative interiors must stay apart
        for (std::size_t a = 0; a < paving.classes.size(); ++a)
            for (std::size_t b = a + 1; b < paving.classes.size(); ++b)
                if (rint_intersects(paving.classes[a].component, paving.classes[b].component))
                    gate.fail("distinct classes overlap at instance " + std::to_string(i));
        // within-class: every atom's own hull equals the merged hull
        for (const PavingClass& c : paving.classes)
            for (std::size_t atom : c.atoms)
                if (!hull_equal(component(c.supports.at(atom), inst.gens), c.component))
                    gate.fail("per-atom hull differs at instance " + std::to_string(i));
        classes += paving.classes.size();
        ++checked;
        pool.pavings.emplace(i, std::move(paving));
    }
    std::ostringstream os;
    os << checked << " pavings, " << classes << " classes, all equal-or-disjoint";
    return os.str();
}

// ---------------------------------------------------------------------------
// gate 4: brute-force vertex enumeration of the feasible polytope
//
// The assembled system is brought to standard form (one surplus variable per
// inequality row) and the graph of feasible bases is walked breadth-first:
// from each basis every entering column is tried and every ratio-test
// minimizer is taken as a leaving row, degenerate pivots included, so each
// vertex of the polytope is reached regardless of degeneracy. This shares no
// code with the solver.

struct StdForm {
    Mat a;  // dense rows
    Vec b;  // >= 0 after row normalization
    std::size_t n = 0;
    std::size_t n_plan = 0;
};

StdForm standard_form(const LinearProgram& lp, std::size_t n_plan) {
    std::size_t extra = 0;
    for (const LinearRow& row : lp.rows)
        if (row.sense != Sense::EQ) ++extra;
    StdForm sf;
    sf.n_plan = n_plan;
    sf.n = static_cast<std::size_t>(lp.num_vars) + extra;
    std::size_t surplus = static_cast<std::size_t>(lp.num_vars);
    for (const LinearRow& row : lp.rows) {
        Vec dense(sf.n, Rational(0));
        for (const auto& [j, v] : row.coeffs) dense[static_cast<std::size_t>(j)] = v;
        if (row.sense == Sense::GE) dense[surplus++] = Rational(-1);
        if (row.sense == Sense::LE) dense[surplus++] = Rational(1);
        Rational rhs = row.rhs;
        if (rhs < 0) {
            for (Rational& v : dense) v = -v;
            rhs = -rhs;
        }
        sf.a.push_back(std::move(dense));
        sf.b.push_back(rhs);
    }
    return sf;
}

struct Tableau {
    Mat t;
    Vec rhs;
    std::vector<int> basis;
};

void pivot(Tableau& tb, std::size_t pr, std::size_t pc) {
    Rational inv = Rational(1) / tb.t[pr][pc];
    for (Rational& v : tb.t[pr]) v *= inv;
    tb.rhs[pr] *= inv;
    for (std::size_t r = 0; r < tb.t.size(); ++r) {
        if (r == pr) continue;
        Rational f = tb.t[r][pc];
        if (f == 0) continue;
        for (std::size_t c = 0; c < tb.t[r].size(); ++c) tb.t[r][c] -= f * tb.t[pr][c];
        tb.rhs[r] -= f * tb.rhs[pr];
    }
    tb.basis[pr] = static_cast<int>(pc);
}

// Bland-rule phase one over artificial columns; on success the tableau holds
// a feasible basis over the real columns with redundant rows dropped.
bool phase_one(const StdForm& sf, Tableau& tb) {
    std::size_t rows = sf.a.size();
    std::size_t cols = sf.n + rows;
    tb.t.assign(rows, Vec(cols, Rational(0)));
    tb.rhs = sf.b;
    tb.basis.assign(rows, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < sf.n; ++c) tb.t[r][c] = sf.a[r][c];
        tb.t[r][sf.n + r] = Rational(1);
        tb.basis[r] = static_cast<int>(sf.n + r);
    }
    auto artificial = [&](int c) { return c >= static_cast<int>(sf.n); };
    while (true) {
        int enter = -1;
        for (std::size_t c = 0; c < cols && enter < 0; ++c) {
            if (std::find(tb.basis.begin(), tb.basis.end(), static_cast<int>(c)) !=
                tb.basis.end())
                continue;
            Rational d = artificial(static_cast<int>(c)) ? Rational(1) : Rational(0);
            for (std::size_t r = 0; r < rows; ++r)
                if (artificial(tb.basis[r])) d -= tb.t[r][c];
            if (d < 0) enter = static_cast<int>(c);
        }
        if (enter < 0) break;
        int leave = -1;
        Rational best;
        for (std::size_t r = 0; r < rows; ++r) {
            const Rational& piv = tb.t[r][static_cast<std::size_t>(enter)];
            if (piv <= 0) continue;
            Rational ratio = tb.rhs[r] / piv;
            if (leave < 0 || ratio < best ||
                (ratio == best && tb.basis[r] < tb.basis[static_cast<std::size_t>(leave)])) {
                leave = static_cast<int>(r);
                best = ratio;
            }
        }
        if (leave < 0) return false;
        pivot(tb, static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
    for (std::size_t r = 0; r < rows; ++r)
        if (artificial(tb.basis[r]) && tb.rhs[r] != 0) return false;
    for (std::size_t r = 0; r < tb.t.size();) {
        if (!artificial(tb.basis[r])) {
            ++r;
            continue;
        }
        std::size_t pc = sf.n;
        for (std::size_t c = 0; c < sf.n; ++c)
            if (tb.t[r][c] != 0) {
                pc = c;
                break;
            }
        if (pc < sf.n) {
            pivot(tb, r, pc);
            ++r;
        } else {
            tb.t.erase(tb.t.begin() + static_cast<long>(r));
            tb.rhs.erase(tb.rhs.begin() + static_cast<long>(r));
            tb.basis.erase(tb.basis.begin() + static_cast<long>(r));
        }
    }
    for (Vec& row : tb.t) row.resize(sf.n);
    return true;
}

struct VertexSweep {
    std::vector<Mat> plans;
    std::size_t bases = 0;
    bool infeasible = false;
    bool capped = false;
};

VertexSweep enumerate_vertex_plans(const TransportSystem& ts, std::size_t cap) {
    VertexSweep out;
    StdForm sf = standard_form(ts.lp, ts.n_plan_vars());
    Tableau root;
    if (!phase_one(sf, root)) {
        out.infeasible = true;
        return out;
    }
    std::size_t m = ts.from.size(), k = ts.to.size();
    std::set<std::vector<int>> seen;
    std::set<Vec> plan_keys;
    auto key = [](const Tableau& tb) {
        std::vector<int> b = tb.basis;
        std::sort(b.begin(), b.end());
        return b;
    };
    auto record = [&](const Tableau& tb) {
        Vec z(sf.n_plan, Rational(0));
        for (std::size_t r = 0; r < tb.basis.size(); ++r) {
            std::size_t c = static_cast<std::size_t>(tb.basis[r]);
            if (c < sf.n_plan) z[c] = tb.rhs[r];
        }
        if (!plan_keys.insert(z).second) return;
        Mat pi(m, Vec(k, Rational(0)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j) pi[i][j] = z[i * k + j];
        out.plans.push_back(std::move(pi));
    };
    std::deque<Tableau> frontier;
    seen.insert(key(root));
    record(root);
    ++out.bases;
    frontier.push_back(std::move(root));
    while (!frontier.empty()) {
        Tableau tb = std::move(frontier.front());
        frontier.pop_front();
        std::size_t rows = tb.t.size();
        for (std::size_t e = 0; e < sf.n; ++e) {
            if (std::find(tb.basis.begin(), tb.basis.end(), static_cast<int>(e)) !=
                tb.basis.end())
                continue;
            Rational best;
            bool any = false;
            for (std::size_t r = 0; r < rows; ++r) {
                if (tb.t[r][e] <= 0) continue;
                Rational ratio = tb.rhs[r] / tb.t[r][e];
                if (!any || ratio < best) {
                    best = ratio;
                    any = true;
                }
            }
            if (!any) continue;
            for (std::size_t r = 0; r < rows; ++r) {
                if (tb.t[r][e] <= 0) continue;
                if (tb.rhs[r] / tb.t[r][e] != best) continue;
                std::vector<int> nb = tb.basis;
                nb[r] = static_cast<int>(e);
                std::sort(nb.begin(), nb.end());
                if (!seen.insert(std::move(nb)).second) continue;
                if (out.bases >= cap) {
                    out.capped = true;
                    return out;
                }
                Tableau next = tb;
                pivot(next, r, e);
                record(next);
                ++out.bases;
                frontier.push_back(std::move(next));
            }
        }
    }
    return out;
}

std::string check_vertex_plans(Gate& gate, const SamplePool& pool) {
    std::size_t enumerated = 0, rejected = 0, vertices = 0;
    for (std::size_t i = 0; i < pool.instances.size(); ++i) {
        const Instance& inst = pool.instances[i];
        if (inst.mu.support().size() > 4 || inst.nu.support().size() > 4) continue;
        TransportSystem ts = assemble_transport_lp(inst, 0);
        VertexSweep sweep = enumerate_vertex_plans(ts, 200000);
        if (sweep.capped) {
            gate.fail("basis walk capped at instance " + std::to_string(i));
            continue;
        }
        if (!pool.verdicts[i].in_order) {
            // the independent walk must agree that nothing is feasible
            if (!sweep.infeasible)
                gate.fail("walk found a plan in a rejected instance " + std::to_string(i));
            ++rejected;
            continue;
        }
        if (sweep.infeasible || sweep.plans.empty()) {
            gate.fail("walk found no vertex at instance " + std::to_string(i));
            continue;
        }
        const Paving& paving = pool.pavings.at(i);
        std::vector<std::set<Vec>> charged(paving.classes.size());
        for (const Mat& pi : sweep.plans) {
            if (!plan_feasible(inst, {ts.from, ts.to, pi, Rational(0)}))
                gate.fail("enumerated vertex infeasible at instance " + std::to_string(i));
            for (std::size_t r = 0; r < ts.from.size(); ++r)
                for (std::size_t c = 0; c < ts.to.size(); ++c) {
                    if (pi[r][c] == 0) continue;
                    std::size_t cls = paving.atom_class.at(ts.from[r]);
                    const Vec& img = inst.gens.phi(ts.to[c]);
                    if (!hull_contains(paving.classes[cls].component, img))
                        gate.fail("vertex plan escapes its component at instance " +
                                  std::to_string(i));
                    charged[cls].insert(img);
                }
        }
        for (std::size_t cls = 0; cls < paving.classes.size(); ++cls)
            for (const Vec& v : paving.classes[cls].component.vertices)
                if (!charged[cls].count(v))
                    gate.fail("uncharged component vertex at instance " + std::to_string(i));
        vertices += sweep.plans.size();
        ++enumerated;
    }
    std::ostringstream os;
    os << enumerated << " polytopes, " << vertices << " vertex plans, " << rejected
       << " infeasibility cross-checks";
    return os.str();
}

// ---------------------------------------------------------------------------
// gate 5: zero-mass sets against trivial covers under the section hypothesis

std::string check_polar_sets(Gate& gate, std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x9e3779b9u);
    std::size_t found = 0, nontrivial = 0;
    std::uint64_t s = seed * 1000003ull + 100001;
    while (found < 50) {
        Instance inst = random_instance(s++);
        if (!check_f_order(inst, 0).in_order) continue;
        ++found;
        Paving paving = build_paving(inst, 0);
        PairSet u;
        bool force = found <= 25;  // keep the nontrivial quota unconditional
        for (const auto& [atom, cls] : paving.atom_class) {
            bool forced = false;
            for (std::size_t j = 0; j < inst.ground.size(); ++j) {
                if (!rint_contains(paving.classes[cls].component, inst.gens.phi(j))) continue;
                bool take = rng.coin();
                if (force && !forced && inst.nu.masses()[j] > 0) {
                    take = true;
                    forced = true;
                }
                if (take) u.pairs.emplace_back(atom, j);
            }
        }
        // rows with no mass are unconstrained by the hypothesis
        for (std::size_t i = 0; i < inst.ground.size(); ++i) {
            if (inst.mu.masses()[i] > 0) continue;
            if (rng.coin() && rng.coin())
                u.pairs.emplace_back(i, static_cast<std::size_t>(rng.range(
                                            0, static_cast<long>(inst.ground.size()) - 1)));
        }
        PolarReport rep = check_polar_theorem(u, inst, 0);
        if (!rep.section_checked) gate.fail("hypothesis check did not run");
        if (!rep.equivalence_holds)
            gate.fail("polar/trivial mismatch at sample " + std::to_string(found));
        if (!u.pairs.empty() && !rep.trivial) ++nontrivial;
    }
    if (nontrivial < 10)
        gate.fail("only " + std::to_string(nontrivial) + " nontrivial samples");
    std::ostringstream os;
    os << "50 sampled pair sets, " << nontrivial << " nonempty nontrivial, equivalence 50/50";
    return os.str();
}

// ---------------------------------------------------------------------------
// gate 6: the defect budget that frees the support entirely

std::string check_relaxed_regime(Gate& gate, std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x7f4a7c15u);
    std::uint64_t s = seed * 1000003ull + 200001;
    std::size_t full = 0;
    for (std::size_t t = 0; t < 20; ++t) {
        RandomInstanceOptions opts;
        opts.weight = (t % 2) ? Weight::OnePlusMaxnorm : Weight::One;
        Instance inst = random_instance(s++, opts);
        Vec p = weight_values(inst.ground, inst.weight);
        Rational budget = 0;
        for (std::size_t i = 0; i < inst.ground.size(); ++i)
            budget += p[i] * (inst.mu.masses()[i] + inst.nu.masses()[i]);

        if (!check_f_order(inst, budget).in_order) {
            gate.fail("instance " + std::to_string(t) + " infeasible at the full budget");
            continue;
        }
        SupportResult sup = maximal_support_plan(inst, budget);
        bool grid = true;
        for (const auto& row : sup.support)
            for (bool b : row) grid = grid && b;
        if (!grid) {
            gate.fail("support not the full grid at instance " + std::to_string(t));
        } else {
            ++full;
        }

        PairSet u;
        for (std::size_t i = 0; i < inst.ground.size(); ++i)
            for (std::size_t j = 0; j < inst.ground.size(); ++j)
                if (rng.next() % 4 == 0) u.pairs.emplace_back(i, j);
        PolarReport rep = check_polar_theorem(u, inst, budget);
        if (rep.section_checked) gate.fail("hypothesis check ran in the relaxed regime");
        if (!rep.equivalence_holds)
            gate.fail("three-way equivalence failed at instance " + std::to_string(t));
    }
    std::ostringstream os;
    os << full << "/20 full support grids, three-way equivalence 20/20";
    return os.str();
}

// ---------------------------------------------------------------------------
// gate 7: refinement across nested generator subsets on the two-domain grid

std::string check_subset_refinement(Gate& gate) {
    auto t0 = Clock::now();
    GridScenario sc = grid_two_domains();
    ApircPaving ap = build_apirc(sc.instance, sc.nested_subsets);

    if (ap.pavings.size() != 3) gate.fail("expected three nested subsets");
    std::vector<std::size_t> counts;
    for (const Paving& p : ap.pavings) counts.push_back(p.classes.size());
    if (counts != std::vector<std::size_t>{1, 2, 2})
        gate.fail("per-subset class counts are off");
    if (ap.joint_classes.size() != 2) gate.fail("joint paving should have two classes");
    if (!ap.supp_inclusion) gate.fail("support left a per-subset component");

    std::size_t a = sc.instance.ground.index_of("3,0");
    std::size_t b = sc.instance.ground.index_of("3,4");
    if (gate.ok && ap.atom_joint.at(a) == ap.atom_joint.at(b))
        gate.fail("the two sources were not separated");

    // growing the subset list can only split classes, never merge them
    std::size_t prev = 0;
    for (std::size_t k = 0; gate.ok && k < ap.pavings.size(); ++k) {
        std::set<std::vector<std::size_t>> parts;
        for (const auto& [atom, cls] : ap.pavings[0].atom_class) {
            (void)cls;
            std::vector<std::size_t> tuple;
            for (std::size_t q = 0; q <= k; ++q)
                tuple.push_back(ap.pavings[q].atom_class.at(atom));
            parts.insert(std::move(tuple));
        }
        if (parts.size() < prev) gate.fail("prefix meet coarsened");
        prev = parts.size();
    }
    if (gate.ok && prev != ap.joint_classes.size())
        gate.fail("joint classes disagree with the full meet");

    double ms = ms_since(t0);
    if (ms >= 30000) gate.fail("took " + fmt_ms(ms) + ", budget is 30 s");
    std::ostringstream os;
    os << "classes 1/2/2, joint 2, supports contained, " << fmt_ms(ms);
    return os.str();
}

// ---------------------------------------------------------------------------
// gate 8: minimal faces at a shared component point, plus idempotence

Instance touching_pair() {
    std::vector<GroundPoint> pts;
    for (const char* id : {"-1", "-1/2", "0", "1/2", "1"})
        pts.push_back({id, {parse_rational(id)}});
    GroundSet ground(pts);
    DiscreteMeasure mu(ground, {{"-1/2", Rational(1) / 2}, {"1/2", Rational(1) / 2}});
    DiscreteMeasure nu(ground, {{"-1", Rational(1) / 4},
                                {"0", Rational(1) / 2},
                                {"1", Rational(1) / 4}});
    GeneratorSpec up, down;
    up.kind = GenKind::Affine;
    up.affine_coeffs = {Rational(1)};
    down.kind = GenKind::Affine;
    down.affine_coeffs = {Rational(-1)};
    return {ground, mu, nu, build_generator_set(ground, {up, down}), Weight::One};
}

std::string check_minimal_faces(Gate& gate, std::uint64_t seed) {
    Instance inst = touching_pair();
    Paving paving = build_paving(inst, 0);
    if (paving.classes.size() != 2) gate.fail("expected two touching classes");
    if (gate.ok) {
        const Vec& shared = inst.gens.phi(inst.ground.index_of("0"));
        Polytope left = gleason_part(paving.classes[0].component, shared);
        Polytope right = gleason_part(paving.classes[1].component, shared);
        if (left.vertices != Mat{shared} || right.vertices != Mat{shared})
            gate.fail("shared point is not a face of both closures");
        if (!hull_equal(left, right)) gate.fail("faces from the two sides differ");
    }

    SplitMix64 rng(seed ^ 0x133111ebu);
    for (std::size_t iter = 0; iter < 100; ++iter) {
        std::size_t npts = 3 + static_cast<std::size_t>(rng.range(0, 3));
        Mat pts;
        for (std::size_t i = 0; i < npts; ++i)
            pts.push_back({Rational(rng.range(-5, 5)), Rational(rng.range(-5, 5))});
        Polytope p = make_polytope(pts);
        Vec weights(npts);
        Rational total = 0;
        for (Rational& w : weights) {
            w = Rational(rng.range(0, 4));
            total += w;
        }
        if (total == 0) {
            weights[0] = 1;
            total = 1;
        }
        Vec point(2, Rational(0));
        for (std::size_t i = 0; i < npts; ++i)
            for (std::size_t c = 0; c < 2; ++c) point[c] += weights[i] * pts[i][c] / total;
        Polytope face = gleason_part(p, point);
        if (!hull_equal(gleason_part(face, point), face)) {
            gate.fail("gleason part not idempotent at iteration " + std::to_string(iter));
            break;
        }
    }
    return "shared vertex matched from both sides, idempotent on 100 samples";
}

// ---------------------------------------------------------------------------
// gate 9: exact duality and ray structure for plain transport

std::string check_ray_balance(Gate& gate, std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0xbf58476du);
    auto draw_measure = [&](const GroundSet& ground) {
        Vec w(ground.size(), Rational(0));
        Rational total = 0;
        while (total == 0) {
            total = 0;
            for (Rational& v : w) {
                v = Rational(rng.range(0, 4));
                total += v;
            }
        }
        for (Rational& v : w) v /= total;
        return DiscreteMeasure(ground, w);
    };
    std::size_t applicable = 0;
    for (std::size_t t = 0; t < 25; ++t) {
        bool planar = t >= 20;
        std::size_t npts = t < 3 ? 2
                                 : static_cast<std::size_t>(planar ? rng.range(3, 5)
                                                                   : rng.range(2, 6));
        std::set<std::pair<long, long>> used;
        std::vector<GroundPoint> pts;
        while (pts.size() < npts) {
            long x = planar ? rng.range(-4, 4) : rng.range(-9, 9);
            long y = planar ? rng.range(-4, 4) : 0;
            if (!used.insert({x, y}).second) continue;
            GroundPoint p;
            p.id = "p" + std::to_string(pts.size());
            p.coords = planar ? Vec{Rational(x), Rational(y)} : Vec{Rational(x)};
            pts.push_back(std::move(p));
        }
        GroundSet ground(pts);
        DiscreteMeasure mu = draw_measure(ground);
        DiscreteMeasure nu = draw_measure(ground);
        MetricInstance mi(ground, l1_metric(ground), mu, nu);

        DualSolution dual = kantorovich_potential(mi);
        PrimalSolution primal = w1_primal(mi);
        if (dual.value != primal.value) {
            gate.fail("duality gap at instance " + std::to_string(t));
            continue;
        }
        const Vec& v = dual.potential.values;
        for (std::size_t r = 0; r < primal.plan.from.size(); ++r)
            for (std::size_t c = 0; c < primal.plan.to.size(); ++c) {
                if (primal.plan.pi[r][c] == 0) continue;
                std::size_t a = primal.plan.from[r], b = primal.plan.to[c];
                if (rational_abs(v[a] - v[b]) != mi.metric[a][b])
                    gate.fail("charged pair is not tight at instance " + std::to_string(t));
            }
        RayDecomposition rays = transport_rays(mi, dual.potential);
        BalanceReport bal = ray_mass_balance(mi, rays);
        if (bal.applicable) {
            ++applicable;
            if (!bal.balanced)
                gate.fail("branch-free rays unbalanced at instance " + std::to_string(t));
        }
    }
    if (applicable == 0) gate.fail("no branch-free instance was sampled");
    std::ostringstream os;
    os << "25 instances, zero duality gap, tight supports, " << applicable
       << " branch-free and balanced";
    return os.str();
}

// ---------------------------------------------------------------------------
// gate 10: every command, run twice, byte for byte

std::string check_determinism(Gate& gate) {
    std::vector<std::pair<std::string, RunConfig>> cases;
    auto push = [&](std::string label, RunConfig cfg) {
        cases.emplace_back(std::move(label), std::move(cfg));
    };

    {
        RunConfig c;
        c.command = "scenario";
        c.scenario = "two_islands";
        push("scenario two_islands", c);
        c.scenario = "grid_two_domains";
        push("scenario grid_two_domains", c);
    }
    Json islands = instance_to_json(gen_classic("two_islands"));
    {
        RunConfig c;
        c.command = "check-order";
        c.input = islands;
        push("check-order", c);
    }
    {
        RunConfig c;
        c.command = "transport";
        c.input = islands;
        c.emit_csv = true;
        push("transport", c);
    }
    {
        RunConfig c;
        c.command = "paving";
        c.input = islands;
        c.emit_csv = true;
        c.emit_svg = true;
        push("paving", c);
    }
    {
        RunConfig c;
        c.command = "apirc";
        c.input = islands;
        c.subsets = Json::parse("[[0],[0,1]]");
        push("apirc", c);
    }
    {
        RunConfig c;
        c.command = "polar";
        c.input = islands;
        c.pairs = Json::parse(R"({"pairs":[["-2","-2"],["-2","3"]]})");
        push("polar", c);
    }
    {
        RunConfig c;
        c.command = "relaxed-support";
        c.input = instance_to_json(gen_classic("relaxed_threshold"));
        c.delta = 4;
        push("relaxed-support", c);
    }
    {
        std::vector<GroundPoint> pts{{"p0", {Rational(0)}},
                                     {"p1", {Rational(1)}},
                                     {"p2", {Rational(3)}}};
        GroundSet ground(pts);
        MetricInstance mi(ground, l1_metric(ground),
                          DiscreteMeasure(ground, {{"p0", Rational(1)}}),
                          DiscreteMeasure(ground, {{"p2", Rational(1)}}));
        RunConfig c;
        c.command = "rays";
        c.input = metric_instance_to_json(mi);
        c.emit_csv = true;
        push("rays", c);
    }

    std::size_t artifacts = 0;
    for (const auto& [label, cfg] : cases) {
        RunResult first = run(cfg);
        RunResult second = run(cfg);
        if (first.exit_code != second.exit_code)
            gate.fail(label + ": exit codes differ across runs");
        if (first.artifacts != second.artifacts) gate.fail(label + ": artifacts differ");
        if (first.artifacts.empty()) gate.fail(label + ": produced nothing");
        for (const auto& [name, bytes] : first.artifacts)
            if (bytes.empty()) gate.fail(label + ": empty artifact " + name);
        artifacts += first.artifacts.size();
    }
    std::ostringstream os;
    os << cases.size() << " commands rerun, " << artifacts << " artifacts byte-identical";
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
    std::vector<CheckResult> out;
    SamplePool pool;
    out.push_back(guarded("worked-example", [&](Gate& g) { return check_worked_example(g); }));
    out.push_back(guarded("order-dichotomy",
                          [&](Gate& g) { return check_order_decisions(g, seed, pool); }));
    out.push_back(
        guarded("equal-or-disjoint", [&](Gate& g) { return check_dichotomy(g, pool); }));
    out.push_back(
        guarded("vertex-enumeration", [&](Gate& g) { return check_vertex_plans(g, pool); }));
    out.push_back(
        guarded("polar-equivalence", [&](Gate& g) { return check_polar_sets(g, seed); }));
    out.push_back(
        guarded("relaxed-defect", [&](Gate& g) { return check_relaxed_regime(g, seed); }));
    out.push_back(
        guarded("subset-refinement", [&](Gate& g) { return check_subset_refinement(g); }));
    out.push_back(
        guarded("minimal-faces", [&](Gate& g) { return check_minimal_faces(g, seed); }));
    out.push_back(guarded("ray-balance", [&](Gate& g) { return check_ray_balance(g, seed); }));
    out.push_back(guarded("determinism", [&](Gate& g) { return check_determinism(g); }));
    return out;
}

}  // namespace fcone
