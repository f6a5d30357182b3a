#include "fcone/ground.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "fcone/linalg.hpp"
#include "fcone/lp.hpp"

namespace fcone {

GroundSet::GroundSet(std::vector<GroundPoint> points) : points_(std::move(points)) {
    if (points_.empty())
        throw SchemaError("ground set has no points");
    dim_ = points_[0].coords.size();
    std::set<Vec> seen;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const GroundPoint& p = points_[i];
        if (p.id.empty())
            throw SchemaError("ground point with empty id");
        if (p.coords.size() != dim_)
            throw DimensionMismatch("ground point '" + p.id + "' has wrong coordinate count");
        if (!index_.emplace(p.id, i).second)
            throw SchemaError("duplicate ground point id '" + p.id + "'");
        if (!seen.insert(p.coords).second)
            throw SchemaError("ground points '" + p.id + "' and another share coordinates");
    }
}

bool GroundSet::has(const std::string& id) const { return index_.count(id) != 0; }

std::size_t GroundSet::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw SchemaError("unknown ground point id '" + id + "'");
    return it->second;
}

namespace {

void check_probability(const Vec& masses) {
    Rational total = 0;
    for (const Rational& m : masses) {
        if (m < 0)
            throw SchemaError("negative mass");
        total += m;
    }
    if (total != 1)
        throw SchemaError("masses sum to " + rational_str(total) + ", expected 1");
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(const GroundSet& ground,
                                 const std::map<std::string, Rational>& masses) {
    masses_.assign(ground.size(), Rational(0));
    for (const auto& [id, m] : masses)
        masses_[ground.index_of(id)] = m;
    check_probability(masses_);
}

DiscreteMeasure::DiscreteMeasure(const GroundSet& ground, Vec masses)
    : masses_(std::move(masses)) {
    if (masses_.size() != ground.size())
        throw DimensionMismatch("mass vector does not match ground size");
    check_probability(masses_);
}

std::vector<std::size_t> DiscreteMeasure::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < masses_.size(); ++i)
        if (masses_[i] > 0)
            out.push_back(i);
    return out;
}

Vec grid_harmonic_values(const GroundSet& ground, const std::string& boundary_id) {
    if (ground.dimension() != 2)
        throw DimensionMismatch("grid harmonic generators need planar ground points");
    const std::size_t root = ground.index_of(boundary_id);

    std::map<Vec, std::size_t> by_coord;
    for (std::size_t i = 0; i < ground.size(); ++i)
        by_coord.emplace(ground.point(i).coords, i);

    const Vec steps[4] = {{Rational(1), Rational(0)},
                          {Rational(-1), Rational(0)},
                          {Rational(0), Rational(1)},
                          {Rational(0), Rational(-1)}};
    auto neighbor = [&](std::size_t i, int s) -> std::size_t {
        Vec c = ground.point(i).coords;
        c[0] += steps[s][0];
        c[1] += steps[s][1];
        auto it = by_coord.find(c);
        return it == by_coord.end() ? ground.size() : it->second;
    };

    // unit-grid component of the boundary vertex
    std::vector<bool> in_comp(ground.size(), false);
    std::queue<std::size_t> todo;
    in_comp[root] = true;
    todo.push(root);
    while (!todo.empty()) {
        const std::size_t v = todo.front();
        todo.pop();
        for (int s = 0; s < 4; ++s) {
            const std::size_t n = neighbor(v, s);
            if (n < ground.size() && !in_comp[n]) {
                in_comp[n] = true;
                todo.push(n);
            }
        }
    }

    std::vector<std::size_t> interior;
    std::vector<std::size_t> slot(ground.size(), ground.size());
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (!in_comp[i])
            continue;
        bool full = true;
        for (int s = 0; s < 4 && full; ++s)
            full = neighbor(i, s) < ground.size();
        if (full) {
            slot[i] = interior.size();
            interior.push_back(i);
        }
    }

    if (slot[root] < ground.size())
        throw SchemaError("grid harmonic anchor '" + boundary_id + "' is an interior cell");

    Vec h(ground.size(), Rational(0));
    h[root] = 1;

    if (!interior.empty()) {
        // 5-point Dirichlet system over the interior unknowns
        const std::size_t k = interior.size();
        Mat a(k, Vec(k, Rational(0)));
        Vec b(k, Rational(0));
        for (std::size_t r = 0; r < k; ++r) {
            a[r][r] = 4;
            for (int s = 0; s < 4; ++s) {
                const std::size_t n = neighbor(interior[r], s);
                if (slot[n] < ground.size())
                    a[r][slot[n]] -= 1;
                else
                    b[r] += h[n];
            }
        }
        auto sol = solve_linear(a, b);
        if (!sol)
            throw MalformedProgram("grid Dirichlet system is singular");
        for (std::size_t r = 0; r < k; ++r)
            h[interior[r]] = (*sol)[r];
    }
    return h;
}

GeneratorSet::GeneratorSet(const GroundSet& ground, std::vector<Generator> generators)
    : n_points_(ground.size()), generators_(std::move(generators)) {
    derive();
}

void GeneratorSet::derive() {
    if (generators_.empty())
        throw EmptyGenerators();
    for (const Generator& g : generators_)
        if (g.values.size() != n_points_)
            throw DimensionMismatch("generator '" + g.id + "' not defined at every point");

    // greedy basis of span({1} ∪ G): keep a forward-eliminated copy of each
    // accepted vector; a candidate joins iff something survives elimination
    basis_.clear();
    basis_labels_.clear();
    Mat reduced;
    std::vector<std::size_t> pivots;
    auto try_add = [&](const Vec& v, const std::string& label) {
        Vec w = v;
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            const Rational f = w[pivots[r]];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < w.size(); ++j)
                w[j] -= f * reduced[r][j];
        }
        std::size_t p = w.size();
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] != 0) {
                p = j;
                break;
            }
        if (p == w.size())
            return;
        const Rational lead = w[p];
        for (Rational& x : w)
            x /= lead;
        reduced.push_back(std::move(w));
        pivots.push_back(p);
        basis_.push_back(v);
        basis_labels_.push_back(label);
    };

    try_add(Vec(n_points_, Rational(1)), "1");
    for (const Generator& g : generators_)
        try_add(g.values, g.id);

    // lineality: -g expressible as a nonnegative combination of the admissible
    // directions, which are all of G plus the negations of generators whose
    // kind declares the direction symmetric
    Mat cone_cols;
    for (const Generator& g : generators_)
        cone_cols.push_back(g.values);
    for (const Generator& g : generators_)
        if (g.declared_symmetric) {
            Vec neg = g.values;
            for (Rational& v : neg)
                v = -v;
            cone_cols.push_back(std::move(neg));
        }
    lineality_.assign(generators_.size(), false);
    for (std::size_t k = 0; k < generators_.size(); ++k) {
        if (generators_[k].declared_symmetric) {
            lineality_[k] = true;
            continue;
        }
        LinearProgram lp;
        lp.num_vars = static_cast<int>(cone_cols.size());
        lp.objective.assign(cone_cols.size(), Rational(0));
        lp.bounds.assign(cone_cols.size(), VarBound::NonNegative);
        for (std::size_t i = 0; i < n_points_; ++i) {
            LinearRow row;
            for (std::size_t j = 0; j < cone_cols.size(); ++j)
                if (cone_cols[j][i] != 0)
                    row.coeffs.push_back({static_cast<int>(j), cone_cols[j][i]});
            row.sense = Sense::EQ;
            row.rhs = -generators_[k].values[i];
            lp.rows.push_back(std::move(row));
        }
        lineality_[k] = solve_lp(lp).status == LPStatus::Optimal;
    }

    eval_.assign(n_points_, Vec(basis_.size(), Rational(0)));
    for (std::size_t i = 0; i < n_points_; ++i)
        for (std::size_t k = 0; k < basis_.size(); ++k)
            eval_[i][k] = basis_[k][i];

    separates_ = true;
    std::set<Vec> rows;
    for (const Vec& row : eval_)
        if (!rows.insert(row).second) {
            separates_ = false;
            break;
        }
}

bool GeneratorSet::fully_lineal() const {
    return std::all_of(lineality_.begin(), lineality_.end(), [](bool f) { return f; });
}

GeneratorSet GeneratorSet::subset(const std::vector<std::size_t>& generator_indices) const {
    GeneratorSet out;
    out.n_points_ = n_points_;
    for (std::size_t k : generator_indices) {
        if (k >= generators_.size())
            throw SchemaError("generator subset index out of range");
        out.generators_.push_back(generators_[k]);
    }
    out.derive();
    return out;
}

GeneratorSet build_generator_set(const GroundSet& ground,
                                 const std::vector<GeneratorSpec>& specs) {
    if (specs.empty())
        throw EmptyGenerators();
    std::vector<Generator> gens;
    gens.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const GeneratorSpec& spec = specs[k];
        Generator g;
        g.id = "g" + std::to_string(k);
        g.spec = spec;
        g.declared_symmetric =
            spec.kind == GenKind::Harmonic2D || spec.kind == GenKind::GridHarmonic;
        switch (spec.kind) {
        case GenKind::Affine: {
            if (spec.affine_coeffs.size() != ground.dimension())
                throw DimensionMismatch("affine generator has wrong coefficient count");
            for (const GroundPoint& p : ground.points()) {
                Rational v = spec.affine_constant;
                for (std::size_t j = 0; j < p.coords.size(); ++j)
                    v += spec.affine_coeffs[j] * p.coords[j];
                g.values.push_back(v);
            }
            break;
        }
        case GenKind::Tabulated: {
            for (const auto& [id, value] : spec.tabulated) {
                (void)value;
                if (!ground.has(id))
                    throw SchemaError("tabulated generator names unknown point '" + id + "'");
            }
            for (const GroundPoint& p : ground.points()) {
                auto it = spec.tabulated.find(p.id);
                if (it == spec.tabulated.end())
                    throw SchemaError("tabulated generator missing point '" + p.id + "'");
                g.values.push_back(it->second);
            }
            break;
        }
        case GenKind::Harmonic2D: {
            if (ground.dimension() != 2)
                throw DimensionMismatch("harmonic generators need planar ground points");
            for (const GroundPoint& p : ground.points()) {
                Rational re = 1, im = 0;
                for (int t = 0; t < spec.harm_m; ++t) {
                    const Rational nre = re * p.coords[0] - im * p.coords[1];
                    im = re * p.coords[1] + im * p.coords[0];
                    re = nre;
                }
                g.values.push_back(spec.harm_re ? re : im);
            }
            break;
        }
        case GenKind::GridHarmonic:
            g.values = grid_harmonic_values(ground, spec.grid_boundary);
            break;
        }
        gens.push_back(std::move(g));
    }
    return GeneratorSet(ground, std::move(gens));
}

Vec weight_values(const GroundSet& ground, Weight weight) {
    Vec out(ground.size(), Rational(1));
    if (weight == Weight::OnePlusMaxnorm) {
        for (std::size_t i = 0; i < ground.size(); ++i) {
            Rational m = 0;
            for (const Rational& c : ground.point(i).coords)
                m = std::max(m, rational_abs(c));
            out[i] += m;
        }
    }
    return out;
}

Rational growth_norm(const Vec& values, const Vec& weights) {
    if (values.size() != weights.size())
        throw DimensionMismatch("growth norm over mismatched vectors");
    Rational best = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        best = std::max(best, rational_abs(values[i]) / weights[i]);
    return best;
}

bool f_convex_hull_membership(const std::vector<std::size_t>& S, std::size_t omega,
                              const GeneratorSet& gs) {
    if (S.empty())
        throw EmptySet();
    // λ ≥ 0 with Σ λ_s Φ(s) = Φ(ω); the constant basis row makes Σλ = 1
    LinearProgram lp;
    lp.num_vars = static_cast<int>(S.size());
    lp.objective.assign(S.size(), Rational(0));
    lp.bounds.assign(S.size(), VarBound::NonNegative);
    for (std::size_t k = 0; k < gs.dim(); ++k) {
        LinearRow row;
        for (std::size_t j = 0; j < S.size(); ++j) {
            const Rational& c = gs.phi(S[j])[k];
            if (c != 0)
                row.coeffs.push_back({static_cast<int>(j), c});
        }
        row.sense = Sense::EQ;
        row.rhs = gs.phi(omega)[k];
        lp.rows.push_back(std::move(row));
    }
    return solve_lp(lp).status == LPStatus::Optimal;
}

}  // namespace fcone
