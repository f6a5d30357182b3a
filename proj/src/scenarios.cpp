#include "fcone/scenarios.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <set>
#include <utility>

#include "fcone/errors.hpp"

namespace fcone {

namespace {

using Cell = std::pair<long, long>;  // (x, y)

std::array<Cell, 4> neighbors(const Cell& c) {
    return {Cell{c.first + 1, c.second}, Cell{c.first - 1, c.second},
            Cell{c.first, c.second + 1}, Cell{c.first, c.second - 1}};
}

std::string cell_id(const Cell& c) {
    return std::to_string(c.first) + "," + std::to_string(c.second);
}

struct DomainCells {
    std::set<Cell> interior;
    std::set<Cell> boundary;
};

DomainCells expand_domain(const GridDomain& dom, std::size_t which) {
    DomainCells out;
    for (std::size_t r = 0; r < dom.interior.size(); ++r) {
        for (std::size_t c = 0; c < dom.interior[r].size(); ++c) {
            if (dom.interior[r][c]) {
                out.interior.insert({dom.ox + static_cast<long>(c), dom.oy + static_cast<long>(r)});
            }
        }
    }
    if (out.interior.empty()) {
        throw DisconnectedInterior("domain " + std::to_string(which) + " has no interior cells");
    }

    std::set<Cell> seen;
    std::queue<Cell> frontier;
    frontier.push(*out.interior.begin());
    seen.insert(*out.interior.begin());
    while (!frontier.empty()) {
        Cell cur = frontier.front();
        frontier.pop();
        for (const Cell& nb : neighbors(cur)) {
            if (out.interior.count(nb) && !seen.count(nb)) {
                seen.insert(nb);
                frontier.push(nb);
            }
        }
    }
    if (seen.size() != out.interior.size()) {
        throw DisconnectedInterior("domain " + std::to_string(which) +
                                   " interior is not 4-connected");
    }

    for (const Cell& c : out.interior) {
        for (const Cell& nb : neighbors(c)) {
            if (!out.interior.count(nb)) out.boundary.insert(nb);
        }
    }
    return out;
}

Rational round_to_denominator(const Rational& value, long denominator) {
    using boost::multiprecision::mpz_int;
    Rational scaled = value * denominator + Rational(1, 2);
    mpz_int num = boost::multiprecision::numerator(scaled);
    mpz_int den = boost::multiprecision::denominator(scaled);
    mpz_int q = num / den;
    if (num < 0 && num % den != 0) q -= 1;
    return Rational(q) / denominator;
}

}  // namespace

GridScenario gen_grid_harmonic(const std::vector<GridDomain>& domains,
                               const std::vector<GridStart>& starts) {
    if (domains.empty()) throw SchemaError("no grid domains given");
    if (starts.empty()) throw SchemaError("no starts given");

    std::vector<DomainCells> cells;
    cells.reserve(domains.size());
    for (std::size_t k = 0; k < domains.size(); ++k) cells.push_back(expand_domain(domains[k], k));

    std::vector<std::set<Cell>> domain_points(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        domain_points[k] = cells[k].interior;
        domain_points[k].insert(cells[k].boundary.begin(), cells[k].boundary.end());
    }
    for (std::size_t a = 0; a < cells.size(); ++a) {
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
            for (const Cell& p : domain_points[a]) {
                if (domain_points[b].count(p)) {
                    throw DomainsAdjacent("domains " + std::to_string(a) + " and " +
                                          std::to_string(b) + " share point " + cell_id(p));
                }
                for (const Cell& nb : neighbors(p)) {
                    if (domain_points[b].count(nb)) {
                        throw DomainsAdjacent("domains " + std::to_string(a) + " and " +
                                              std::to_string(b) + " touch at " + cell_id(p));
                    }
                }
            }
        }
    }

    std::set<Cell> all_points;
    for (const auto& pts : domain_points) all_points.insert(pts.begin(), pts.end());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        for (const Cell& b : cells[k].boundary) {
            bool surrounded = true;
            for (const Cell& nb : neighbors(b)) {
                if (!all_points.count(nb)) {
                    surrounded = false;
                    break;
                }
            }
            if (surrounded) {
                throw AmbiguousBoundary("boundary point " + cell_id(b) +
                                        " is surrounded on all four sides");
            }
        }
    }

    std::vector<GroundPoint> points;
    points.reserve(all_points.size());
    for (const Cell& c : all_points) {
        points.push_back({cell_id(c), Vec{Rational(c.first), Rational(c.second)}});
    }
    GroundSet ground(std::move(points));

    Vec mu_masses(ground.size(), Rational(0));
    std::set<Cell> seen_starts;
    for (const GridStart& s : starts) {
        Cell c{s.x, s.y};
        if (!seen_starts.insert(c).second) {
            throw SchemaError("duplicate start " + cell_id(c));
        }
        std::size_t owners = 0;
        for (const auto& dc : cells) owners += dc.interior.count(c);
        if (owners != 1) {
            throw StartOnBoundary("start " + cell_id(c) +
                                  " is not strictly inside exactly one domain");
        }
        mu_masses[ground.index_of(cell_id(c))] = s.mass;
    }
    DiscreteMeasure mu(ground, mu_masses);

    std::vector<GeneratorSpec> specs;
    std::size_t harmonic_count = 0;
    for (const auto& dc : cells) {
        for (const Cell& b : dc.boundary) {
            GeneratorSpec spec;
            spec.kind = GenKind::GridHarmonic;
            spec.grid_boundary = cell_id(b);
            specs.push_back(std::move(spec));
            ++harmonic_count;
        }
    }
    for (int axis = 0; axis < 2; ++axis) {
        GeneratorSpec spec;
        spec.kind = GenKind::Affine;
        spec.affine_coeffs = Vec{Rational(axis == 0 ? 1 : 0), Rational(axis == 0 ? 0 : 1)};
        specs.push_back(std::move(spec));
    }
    GeneratorSet gens = build_generator_set(ground, specs);

    Vec nu_masses(ground.size(), Rational(0));
    std::vector<std::size_t> start_idx = mu.support();
    for (std::size_t k = 0; k < harmonic_count; ++k) {
        const Generator& g = gens.generators()[k];
        std::size_t bi = ground.index_of(g.spec.grid_boundary);
        for (std::size_t si : start_idx) nu_masses[bi] += mu.mass(si) * g.values[si];
    }
    DiscreteMeasure nu(ground, std::move(nu_masses));

    GridScenario out{Instance{std::move(ground), std::move(mu), std::move(nu), std::move(gens),
                              Weight::One},
                     {}, {}, {}};
    for (std::size_t k = 0; k < harmonic_count; ++k) out.harmonic_indices.push_back(k);
    out.affine_indices = {harmonic_count, harmonic_count + 1};

    out.nested_subsets.push_back(out.affine_indices);
    std::vector<std::size_t> with_separator = {0};
    with_separator.insert(with_separator.end(), out.affine_indices.begin(),
                          out.affine_indices.end());
    out.nested_subsets.push_back(with_separator);
    std::vector<std::size_t> everything(harmonic_count + 2);
    for (std::size_t k = 0; k < everything.size(); ++k) everything[k] = k;
    out.nested_subsets.push_back(std::move(everything));
    return out;
}

namespace {

GroundSet line_ground(const std::vector<Rational>& xs) {
    std::vector<GroundPoint> pts;
    pts.reserve(xs.size());
    for (const Rational& x : xs) pts.push_back({rational_str(x), Vec{x}});
    return GroundSet(std::move(pts));
}

GeneratorSpec affine1d(long coeff) {
    GeneratorSpec spec;
    spec.kind = GenKind::Affine;
    spec.affine_coeffs = Vec{Rational(coeff)};
    return spec;
}

}  // namespace

Instance gen_classic(const std::string& name) {
    if (name == "submartingale_shift") {
        GroundSet ground = line_ground({Rational(0), Rational(1), Rational(3, 2), Rational(2)});
        DiscreteMeasure mu(ground, std::map<std::string, Rational>{{"0", Rational(1)}});
        DiscreteMeasure nu(ground, std::map<std::string, Rational>{{"1", Rational(1, 3)},
                                                                   {"3/2", Rational(1, 3)},
                                                                   {"2", Rational(1, 3)}});
        GeneratorSet gens = build_generator_set(ground, {affine1d(1)});
        return Instance{std::move(ground), std::move(mu), std::move(nu), std::move(gens),
                        Weight::One};
    }
    if (name == "symmetric_split") {
        GroundSet ground = line_ground({Rational(-1), Rational(0), Rational(1)});
        DiscreteMeasure mu(ground, std::map<std::string, Rational>{{"0", Rational(1)}});
        DiscreteMeasure nu(ground, std::map<std::string, Rational>{{"-1", Rational(1, 2)},
                                                                   {"1", Rational(1, 2)}});
        GeneratorSet gens = build_generator_set(ground, {affine1d(1), affine1d(-1)});
        return Instance{std::move(ground), std::move(mu), std::move(nu), std::move(gens),
                        Weight::One};
    }
    if (name == "two_islands") {
        GroundSet ground = line_ground({Rational(-3), Rational(-2), Rational(-1), Rational(1),
                                        Rational(2), Rational(3)});
        DiscreteMeasure mu(ground, std::map<std::string, Rational>{{"-2", Rational(1, 2)},
                                                                   {"2", Rational(1, 2)}});
        DiscreteMeasure nu(ground, std::map<std::string, Rational>{{"-3", Rational(1, 4)},
                                                                   {"-1", Rational(1, 4)},
                                                                   {"1", Rational(1, 4)},
                                                                   {"3", Rational(1, 4)}});
        GeneratorSet gens = build_generator_set(ground, {affine1d(1), affine1d(-1)});
        return Instance{std::move(ground), std::move(mu), std::move(nu), std::move(gens),
                        Weight::One};
    }
    if (name == "relaxed_threshold") {
        GroundSet ground = line_ground({Rational(0), Rational(2)});
        DiscreteMeasure mu(ground, std::map<std::string, Rational>{{"0", Rational(1)}});
        DiscreteMeasure nu(ground, std::map<std::string, Rational>{{"2", Rational(1)}});
        GeneratorSet gens = build_generator_set(ground, {affine1d(1), affine1d(-1)});
        return Instance{std::move(ground), std::move(mu), std::move(nu), std::move(gens),
                        Weight::OnePlusMaxnorm};
    }
    throw UnknownScenario("no scenario named \"" + name + "\"");
}

GridScenario grid_single() {
    GridDomain dom;
    dom.ox = 1;
    dom.oy = 1;
    dom.interior = {{true}};
    return gen_grid_harmonic({dom}, {GridStart{1, 1, Rational(1)}});
}

GridScenario grid_two_domains() {
    GridDomain bowl;
    bowl.ox = -3;
    bowl.oy = 0;
    bowl.interior.assign(4, std::vector<bool>(13, false));
    for (long x = 0; x <= 6; ++x) bowl.interior[0][x + 3] = true;
    for (long x : {-1L, 0L, 6L, 7L}) bowl.interior[1][x + 3] = true;
    for (long x : {-2L, -1L, 7L, 8L}) bowl.interior[2][x + 3] = true;
    for (long x : {-3L, -2L, 8L, 9L}) bowl.interior[3][x + 3] = true;

    GridDomain nested;
    nested.ox = 3;
    nested.oy = 4;
    nested.interior = {{true}};

    return gen_grid_harmonic({bowl, nested}, {GridStart{3, 0, Rational(1, 2)},
                                              GridStart{3, 4, Rational(1, 2)}});
}

namespace {

std::vector<GeneratorSpec> harmonic_polynomials(const GroundSet& ground, int max_degree,
                                                long denominator) {
    if (ground.dimension() != 2) {
        throw NotPlanar("harmonic polynomial generators need two-dimensional points");
    }
    if (max_degree < 1) throw SchemaError("max_degree must be at least 1");

    std::size_t n = ground.size();
    Vec re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = ground.point(i).coords[0];
        im[i] = ground.point(i).coords[1];
    }

    std::vector<GeneratorSpec> specs;
    for (int m = 1; m <= max_degree; ++m) {
        for (int part = 0; part < 2; ++part) {
            GeneratorSpec spec;
            spec.kind = GenKind::Tabulated;
            for (std::size_t i = 0; i < n; ++i) {
                Rational v = part == 0 ? re[i] : im[i];
                if (denominator > 0) v = round_to_denominator(v, denominator);
                spec.tabulated[ground.point(i).id] = v;
            }
            specs.push_back(std::move(spec));
        }
        if (m < max_degree) {
            for (std::size_t i = 0; i < n; ++i) {
                const Rational& x = ground.point(i).coords[0];
                const Rational& y = ground.point(i).coords[1];
                Rational nre = re[i] * x - im[i] * y;
                im[i] = re[i] * y + im[i] * x;
                re[i] = std::move(nre);
            }
        }
    }
    return specs;
}

}  // namespace

std::vector<GeneratorSpec> gen_harmonic_polynomials(const GroundSet& ground, int max_degree) {
    return harmonic_polynomials(ground, max_degree, 0);
}

std::vector<GeneratorSpec> gen_harmonic_polynomials(const GroundSet& ground, int max_degree,
                                                    long denominator) {
    if (denominator <= 0) throw SchemaError("rounding denominator must be positive");
    return harmonic_polynomials(ground, max_degree, denominator);
}

}  // namespace fcone
