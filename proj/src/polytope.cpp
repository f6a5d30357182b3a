#include "fcone/polytope.hpp"

#include <set>

#include "fcone/linalg.hpp"
#include "fcone/lp.hpp"

namespace fcone {

namespace {

// feasibility of point = Σ λ_i gens_i with λ ≥ 0, Σ λ = 1
bool in_hull(const Mat& gens, const Vec& point) {
    LinearProgram lp;
    lp.num_vars = static_cast<int>(gens.size());
    lp.objective.assign(gens.size(), Rational(0));
    lp.bounds.assign(gens.size(), VarBound::NonNegative);

    LinearRow total;
    for (std::size_t j = 0; j < gens.size(); ++j)
        total.coeffs.push_back({static_cast<int>(j), Rational(1)});
    total.sense = Sense::EQ;
    total.rhs = 1;
    lp.rows.push_back(std::move(total));

    for (std::size_t k = 0; k < point.size(); ++k) {
        LinearRow row;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (gens[j][k] != 0)
                row.coeffs.push_back({static_cast<int>(j), gens[j][k]});
        row.sense = Sense::EQ;
        row.rhs = point[k];
        lp.rows.push_back(std::move(row));
    }
    return solve_lp(lp).status == LPStatus::Optimal;
}

}  // namespace

Polytope make_polytope(const Mat& points) {
    if (points.empty())
        throw EmptySupport();
    const std::size_t dim = points[0].size();

    Mat unique;
    std::set<Vec> seen;
    for (const Vec& p : points) {
        if (p.size() != dim)
            throw DimensionMismatch("polytope points of mixed dimension");
        if (seen.insert(p).second)
            unique.push_back(p);
    }

    Polytope out;
    out.ambient_dim = dim;
    for (std::size_t i = 0; i < unique.size(); ++i) {
        Mat others;
        for (std::size_t j = 0; j < unique.size(); ++j)
            if (j != i)
                others.push_back(unique[j]);
        if (others.empty() || !in_hull(others, unique[i]))
            out.vertices.push_back(unique[i]);
    }

    Mat diffs;
    for (std::size_t i = 1; i < out.vertices.size(); ++i) {
        Vec d(dim);
        for (std::size_t k = 0; k < dim; ++k)
            d[k] = out.vertices[i][k] - out.vertices[0][k];
        diffs.push_back(std::move(d));
    }
    out.affine_dim = diffs.empty() ? 0 : rank(diffs);
    return out;
}

bool hull_contains(const Polytope& p, const Vec& point) {
    if (point.size() != p.ambient_dim)
        throw DimensionMismatch("membership query in the wrong dimension");
    return in_hull(p.vertices, point);
}

bool rint_contains(const Polytope& p, const Vec& point) {
    if (point.size() != p.ambient_dim)
        throw DimensionMismatch("membership query in the wrong dimension");
    const std::size_t n = p.vertices.size();

    // maximize t subject to λ_i ≥ t, Σ λ = 1, Σ λ v_i = point
    LinearProgram lp;
    lp.num_vars = static_cast<int>(n + 1);
    lp.objective.assign(n + 1, Rational(0));
    lp.objective[n] = 1;
    lp.bounds.assign(n + 1, VarBound::NonNegative);

    LinearRow total;
    for (std::size_t j = 0; j < n; ++j)
        total.coeffs.push_back({static_cast<int>(j), Rational(1)});
    total.sense = Sense::EQ;
    total.rhs = 1;
    lp.rows.push_back(std::move(total));

    for (std::size_t k = 0; k < p.ambient_dim; ++k) {
        LinearRow row;
        for (std::size_t j = 0; j < n; ++j)
            if (p.vertices[j][k] != 0)
                row.coeffs.push_back({static_cast<int>(j), p.vertices[j][k]});
        row.sense = Sense::EQ;
        row.rhs = point[k];
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < n; ++j) {
        LinearRow row;
        row.coeffs.push_back({static_cast<int>(j), Rational(1)});
        row.coeffs.push_back({static_cast<int>(n), Rational(-1)});
        row.sense = Sense::GE;
        row.rhs = 0;
        lp.rows.push_back(std::move(row));
    }

    const LPOutcome out = solve_lp(lp);
    return out.status == LPStatus::Optimal && out.value > 0;
}

bool rint_intersects(const Polytope& p, const Polytope& q) {
    if (p.ambient_dim != q.ambient_dim)
        throw DimensionMismatch("relative interiors in different dimensions");
    const std::size_t np = p.vertices.size();
    const std::size_t nq = q.vertices.size();
    const int t_var = static_cast<int>(np + nq);

    LinearProgram lp;
    lp.num_vars = static_cast<int>(np + nq + 1);
    lp.objective.assign(np + nq + 1, Rational(0));
    lp.objective[np + nq] = 1;
    lp.bounds.assign(np + nq + 1, VarBound::NonNegative);

    for (int side = 0; side < 2; ++side) {
        const std::size_t base = side == 0 ? 0 : np;
        const std::size_t count = side == 0 ? np : nq;
        LinearRow total;
        for (std::size_t j = 0; j < count; ++j)
            total.coeffs.push_back({static_cast<int>(base + j), Rational(1)});
        total.sense = Sense::EQ;
        total.rhs = 1;
        lp.rows.push_back(std::move(total));
    }
    for (std::size_t k = 0; k < p.ambient_dim; ++k) {
        LinearRow row;
        for (std::size_t j = 0; j < np; ++j)
            if (p.vertices[j][k] != 0)
                row.coeffs.push_back({static_cast<int>(j), p.vertices[j][k]});
        for (std::size_t j = 0; j < nq; ++j)
            if (q.vertices[j][k] != 0)
                row.coeffs.push_back({static_cast<int>(np + j), -q.vertices[j][k]});
        row.sense = Sense::EQ;
        row.rhs = 0;
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < np + nq; ++j) {
        LinearRow row;
        row.coeffs.push_back({static_cast<int>(j), Rational(1)});
        row.coeffs.push_back({t_var, Rational(-1)});
        row.sense = Sense::GE;
        row.rhs = 0;
        lp.rows.push_back(std::move(row));
    }

    const LPOutcome out = solve_lp(lp);
    return out.status == LPStatus::Optimal && out.value > 0;
}

bool hull_equal(const Polytope& p, const Polytope& q) {
    if (p.ambient_dim != q.ambient_dim)
        throw DimensionMismatch("hull comparison in different dimensions");
    for (const Vec& v : p.vertices)
        if (!in_hull(q.vertices, v))
            return false;
    for (const Vec& w : q.vertices)
        if (!in_hull(p.vertices, w))
            return false;
    return true;
}

Polytope gleason_part(const Polytope& p, const Vec& point) {
    if (!hull_contains(p, point))
        throw PointOutside();
    const std::size_t n = p.vertices.size();

    Mat face;
    for (std::size_t i = 0; i < n; ++i) {
        // maximize ε with point + ε(point - v_i) still inside the hull
        LinearProgram lp;
        lp.num_vars = static_cast<int>(n + 1);
        lp.objective.assign(n + 1, Rational(0));
        lp.objective[n] = 1;
        lp.bounds.assign(n + 1, VarBound::NonNegative);

        LinearRow total;
        for (std::size_t j = 0; j < n; ++j)
            total.coeffs.push_back({static_cast<int>(j), Rational(1)});
        total.sense = Sense::EQ;
        total.rhs = 1;
        lp.rows.push_back(std::move(total));

        for (std::size_t k = 0; k < p.ambient_dim; ++k) {
            LinearRow row;
            for (std::size_t j = 0; j < n; ++j)
                if (p.vertices[j][k] != 0)
                    row.coeffs.push_back({static_cast<int>(j), p.vertices[j][k]});
            const Rational drift = p.vertices[i][k] - point[k];
            if (drift != 0)
                row.coeffs.push_back({static_cast<int>(n), drift});
            row.sense = Sense::EQ;
            row.rhs = point[k];
            lp.rows.push_back(std::move(row));
        }

        const LPOutcome out = solve_lp(lp);
        const bool in_face = out.status == LPStatus::Unbounded ||
                             (out.status == LPStatus::Optimal && out.value > 0);
        if (in_face)
            face.push_back(p.vertices[i]);
    }
    return make_polytope(face);
}

}  // namespace fcone
