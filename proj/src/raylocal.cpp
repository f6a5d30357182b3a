#include "fcone/raylocal.hpp"

#include <algorithm>
#include <sstream>

namespace fcone {

namespace {

void check_metric(const GroundSet& ground, const Mat& metric) {
    const std::size_t n = ground.size();
    if (metric.size() != n)
        throw InvalidMetric("metric matrix has the wrong number of rows");
    for (const Vec& row : metric)
        if (row.size() != n)
            throw InvalidMetric("metric matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (metric[i][i] != 0)
            throw InvalidMetric("metric diagonal must vanish");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (metric[i][j] != metric[j][i])
                throw InvalidMetric("metric must be symmetric");
            if (metric[i][j] <= 0)
                throw InvalidMetric("distinct points need a positive distance");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (metric[i][k] > metric[i][j] + metric[j][k]) {
                    std::ostringstream msg;
                    msg << "triangle inequality fails through " << ground.point(j).id;
                    throw InvalidMetric(msg.str());
                }
}

}  // namespace

MetricInstance::MetricInstance(GroundSet ground_, Mat metric_, DiscreteMeasure mu_,
                               DiscreteMeasure nu_)
    : ground(std::move(ground_)),
      metric(std::move(metric_)),
      mu(std::move(mu_)),
      nu(std::move(nu_)) {
    check_metric(ground, metric);
}

Mat euclidean_metric(const GroundSet& ground) {
    const std::size_t n = ground.size();
    Mat d(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational sq = 0;
            for (std::size_t k = 0; k < ground.dimension(); ++k) {
                const Rational diff = ground.point(i).coords[k] - ground.point(j).coords[k];
                sq += diff * diff;
            }
            Rational root;
            if (!exact_sqrt(sq, root)) {
                std::ostringstream msg;
                msg << "euclidean distance between " << ground.point(i).id << " and "
                    << ground.point(j).id << " is irrational; use an explicit matrix or l1";
                throw InvalidMetric(msg.str());
            }
            d[i][j] = root;
            d[j][i] = std::move(root);
        }
    return d;
}

Mat l1_metric(const GroundSet& ground) {
    const std::size_t n = ground.size();
    Mat d(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational sum = 0;
            for (std::size_t k = 0; k < ground.dimension(); ++k)
                sum += rational_abs(ground.point(i).coords[k] - ground.point(j).coords[k]);
            d[i][j] = sum;
            d[j][i] = std::move(sum);
        }
    return d;
}

DualSolution kantorovich_potential(const MetricInstance& inst) {
    const std::size_t n = inst.ground.size();
    Rational mu_total = 0, nu_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mu_total += inst.mu.mass(i);
        nu_total += inst.nu.mass(i);
    }
    if (mu_total != nu_total)
        throw MassMismatch();

    LinearProgram lp;
    lp.num_vars = static_cast<int>(n);
    lp.bounds.assign(n, VarBound::Free);
    lp.objective.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        lp.objective[i] = inst.nu.mass(i) - inst.mu.mass(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            LinearRow row;
            row.coeffs.push_back({static_cast<int>(i), Rational(1)});
            row.coeffs.push_back({static_cast<int>(j), Rational(-1)});
            row.sense = Sense::LE;
            row.rhs = inst.metric[i][j];
            lp.rows.push_back(std::move(row));
        }

    const LPOutcome out = solve_lp(lp);
    if (out.status != LPStatus::Optimal)
        throw MalformedProgram("the Lipschitz polytope is never empty or unbounded in value");
    return {Potential{out.primal}, out.value};
}

PrimalSolution w1_primal(const MetricInstance& inst) {
    Rational mu_total = 0, nu_total = 0;
    for (std::size_t i = 0; i < inst.ground.size(); ++i) {
        mu_total += inst.mu.mass(i);
        nu_total += inst.nu.mass(i);
    }
    if (mu_total != nu_total)
        throw MassMismatch();

    const std::vector<std::size_t> from = inst.mu.support();
    const std::vector<std::size_t> to = inst.nu.support();
    const std::size_t m = from.size(), n = to.size();

    LinearProgram lp;
    lp.num_vars = static_cast<int>(m * n);
    lp.bounds.assign(m * n, VarBound::NonNegative);
    lp.objective.resize(m * n);
    for (std::size_t xi = 0; xi < m; ++xi)
        for (std::size_t yj = 0; yj < n; ++yj)
            lp.objective[xi * n + yj] = -inst.metric[from[xi]][to[yj]];
    for (std::size_t xi = 0; xi < m; ++xi) {
        LinearRow row;
        for (std::size_t yj = 0; yj < n; ++yj)
            row.coeffs.push_back({static_cast<int>(xi * n + yj), Rational(1)});
        row.sense = Sense::EQ;
        row.rhs = inst.mu.mass(from[xi]);
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t yj = 0; yj < n; ++yj) {
        LinearRow col;
        for (std::size_t xi = 0; xi < m; ++xi)
            col.coeffs.push_back({static_cast<int>(xi * n + yj), Rational(1)});
        col.sense = Sense::EQ;
        col.rhs = inst.nu.mass(to[yj]);
        lp.rows.push_back(std::move(col));
    }

    const LPOutcome out = solve_lp(lp);
    if (out.status != LPStatus::Optimal)
        throw MalformedProgram("the coupling polytope is never empty or unbounded");

    PrimalSolution sol;
    sol.plan.from = from;
    sol.plan.to = to;
    sol.plan.pi.assign(m, Vec(n));
    for (std::size_t xi = 0; xi < m; ++xi)
        for (std::size_t yj = 0; yj < n; ++yj)
            sol.plan.pi[xi][yj] = out.primal[xi * n + yj];
    sol.value = -out.value;
    return sol;
}

namespace {

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct CliqueSearch {
    const std::vector<std::vector<std::size_t>>& neighbors;  // each ascending
    std::vector<std::vector<std::size_t>> found;

    void run(std::vector<std::size_t>& r, std::vector<std::size_t> p,
             std::vector<std::size_t> x) {
        if (p.empty() && x.empty()) {
            std::vector<std::size_t> clique = r;
            std::sort(clique.begin(), clique.end());
            found.push_back(std::move(clique));
            return;
        }

        // pivot on the vertex covering the most of p; first such vertex wins
        std::size_t pivot = 0;
        std::size_t best = 0;
        bool have = false;
        for (const auto* side : {&p, &x})
            for (std::size_t u : *side) {
                const std::size_t cover = intersect(p, neighbors[u]).size();
                if (!have || cover > best) {
                    have = true;
                    best = cover;
                    pivot = u;
                }
            }

        std::vector<std::size_t> candidates;
        std::set_difference(p.begin(), p.end(), neighbors[pivot].begin(),
                            neighbors[pivot].end(), std::back_inserter(candidates));
        for (std::size_t v : candidates) {
            r.push_back(v);
            run(r, intersect(p, neighbors[v]), intersect(x, neighbors[v]));
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), v));
            auto at = std::lower_bound(x.begin(), x.end(), v);
            x.insert(at, v);
        }
    }
};

}  // namespace

RayDecomposition transport_rays(const MetricInstance& inst, const Potential& v) {
    const std::size_t n = inst.ground.size();
    if (v.values.size() != n)
        throw DimensionMismatch("potential does not cover the ground set");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rational_abs(v.values[i] - v.values[j]) > inst.metric[i][j]) {
                std::ostringstream msg;
                msg << "potential stretches " << inst.ground.point(i).id << " to "
                    << inst.ground.point(j).id << " beyond their distance";
                throw NotLipschitz(msg.str());
            }

    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && rational_abs(v.values[i] - v.values[j]) == inst.metric[i][j])
                neighbors[i].push_back(j);

    CliqueSearch search{neighbors, {}};
    std::vector<std::size_t> r, p(n), x;
    for (std::size_t i = 0; i < n; ++i)
        p[i] = i;
    search.run(r, std::move(p), std::move(x));
    std::sort(search.found.begin(), search.found.end());

    RayDecomposition out;
    out.rays = std::move(search.found);
    std::vector<std::size_t> hits(n, 0);
    for (const auto& ray : out.rays)
        for (std::size_t i : ray)
            ++hits[i];
    for (std::size_t i = 0; i < n; ++i)
        if (hits[i] > 1)
            out.branch_points.push_back(i);
    return out;
}

BalanceReport ray_mass_balance(const MetricInstance& inst, const RayDecomposition& rays) {
    BalanceReport report;
    report.applicable = rays.branch_points.empty();
    report.balanced = report.applicable;
    for (const auto& ray : rays.rays) {
        Rational diff = 0;
        for (std::size_t i : ray)
            diff += inst.mu.mass(i) - inst.nu.mass(i);
        if (diff != 0)
            report.balanced = false;
        report.differences.push_back(std::move(diff));
    }
    return report;
}

}  // namespace fcone
