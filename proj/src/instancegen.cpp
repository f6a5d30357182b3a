#include "fcone/instancegen.hpp"

#include <algorithm>
#include <set>

#include "fcone/lp.hpp"
#include "fcone/order.hpp"

namespace fcone {

namespace {

std::vector<std::size_t> pick_subset(SplitMix64& rng, std::size_t universe, std::size_t count) {
    std::vector<std::size_t> pool(universe);
    for (std::size_t i = 0; i < universe; ++i)
        pool[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.range(0, static_cast<long>(universe - i - 1)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

Vec random_masses(SplitMix64& rng, std::size_t count) {
    Vec units(count);
    Rational total = 0;
    for (Rational& u : units) {
        u = Rational(rng.range(1, 4));
        total += u;
    }
    for (Rational& u : units)
        u /= total;
    return units;
}

}  // namespace

Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& opts) {
    SplitMix64 rng(seed);
    const std::size_t d = static_cast<std::size_t>(rng.range(1, static_cast<long>(opts.max_dim)));
    const std::size_t n_points =
        static_cast<std::size_t>(rng.range(3, static_cast<long>(opts.max_points)));

    std::vector<GroundPoint> pts;
    std::set<Vec> seen;
    while (pts.size() < n_points) {
        Vec c(d);
        for (Rational& x : c)
            x = Rational(rng.range(-4, 4));
        if (seen.insert(c).second)
            pts.push_back({"p" + std::to_string(pts.size()), std::move(c)});
    }
    GroundSet ground(pts);

    std::vector<GeneratorSpec> specs;
    const std::size_t n_dirs =
        static_cast<std::size_t>(rng.range(1, static_cast<long>(opts.max_generators)));
    for (std::size_t k = 0; k < n_dirs; ++k) {
        GeneratorSpec spec;
        spec.kind = GenKind::Affine;
        spec.affine_coeffs.assign(d, Rational(0));
        bool nonzero = false;
        while (!nonzero) {
            for (Rational& c : spec.affine_coeffs) {
                c = Rational(rng.range(-2, 2));
                nonzero = nonzero || c != 0;
            }
        }
        spec.affine_constant = Rational(rng.range(-1, 1));
        specs.push_back(spec);
        if (rng.coin()) {
            GeneratorSpec neg = spec;
            for (Rational& c : neg.affine_coeffs)
                c = -c;
            neg.affine_constant = -neg.affine_constant;
            specs.push_back(neg);
        }
    }
    GeneratorSet gens = build_generator_set(ground, specs);

    const bool push_forward = rng.coin();
    const std::size_t mu_cap = push_forward ? 3 : opts.max_side;
    const std::size_t mu_side = static_cast<std::size_t>(
        rng.range(1, static_cast<long>(std::min(mu_cap, n_points))));
    const std::vector<std::size_t> mu_atoms = pick_subset(rng, n_points, mu_side);
    Vec mu_masses(n_points, Rational(0));
    {
        const Vec units = random_masses(rng, mu_side);
        for (std::size_t i = 0; i < mu_side; ++i)
            mu_masses[mu_atoms[i]] = units[i];
    }
    DiscreteMeasure mu(ground, mu_masses);

    Vec nu_masses(n_points, Rational(0));
    if (!push_forward) {
        const std::size_t nu_side = static_cast<std::size_t>(
            rng.range(1, static_cast<long>(std::min(opts.max_side, n_points))));
        const std::vector<std::size_t> nu_atoms = pick_subset(rng, n_points, nu_side);
        const Vec units = random_masses(rng, nu_side);
        for (std::size_t i = 0; i < nu_side; ++i)
            nu_masses[nu_atoms[i]] = units[i];
    } else {
        // spread each μ-atom through a kernel feasible for the cone rows; the
        // identity kernel is always feasible, so the instance stays in order
        std::vector<std::size_t> pool = mu_atoms;
        while (pool.size() < std::min(opts.max_side, n_points)) {
            const std::size_t cand = static_cast<std::size_t>(
                rng.range(0, static_cast<long>(n_points - 1)));
            if (std::find(pool.begin(), pool.end(), cand) == pool.end())
                pool.push_back(cand);
        }
        std::sort(pool.begin(), pool.end());

        const auto& flags = gens.lineality_flags();
        for (const std::size_t x : mu_atoms) {
            LinearProgram lp;
            lp.num_vars = static_cast<int>(pool.size());
            lp.bounds.assign(pool.size(), VarBound::NonNegative);
            lp.objective.resize(pool.size());
            for (Rational& c : lp.objective)
                c = Rational(rng.range(-2, 2));

            LinearRow total;
            for (std::size_t j = 0; j < pool.size(); ++j)
                total.coeffs.push_back({static_cast<int>(j), Rational(1)});
            total.sense = Sense::EQ;
            total.rhs = 1;
            lp.rows.push_back(total);
            for (std::size_t k = 0; k < gens.count(); ++k) {
                const Vec& val = gens.generators()[k].values;
                LinearRow row;
                for (std::size_t j = 0; j < pool.size(); ++j)
                    if (val[pool[j]] != 0)
                        row.coeffs.push_back({static_cast<int>(j), val[pool[j]]});
                row.sense = flags[k] ? Sense::EQ : Sense::GE;
                row.rhs = val[x];
                lp.rows.push_back(std::move(row));
            }

            const LPOutcome out = solve_lp(lp);
            if (out.status == LPStatus::Optimal) {
                for (std::size_t j = 0; j < pool.size(); ++j)
                    nu_masses[pool[j]] += mu.mass(x) * out.primal[j];
            } else {
                nu_masses[x] += mu.mass(x);
            }
        }
    }
    DiscreteMeasure nu(ground, nu_masses);

    return Instance{std::move(ground), std::move(mu), std::move(nu), std::move(gens), opts.weight};
}

}  // namespace fcone
