#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include <fcone/instancegen.hpp>
#include <fcone/raylocal.hpp>

using namespace fcone;

namespace {

GroundSet line(std::initializer_list<const char*> xs) {
    std::vector<GroundPoint> pts;
    for (const char* x : xs)
        pts.push_back({x, {parse_rational(x)}});
    return GroundSet(std::move(pts));
}

MetricInstance line_instance(std::initializer_list<const char*> xs,
                             std::map<std::string, Rational> mu,
                             std::map<std::string, Rational> nu) {
    GroundSet g = line(xs);
    return MetricInstance(g, euclidean_metric(g), DiscreteMeasure(g, mu), DiscreteMeasure(g, nu));
}

}  // namespace

TEST_CASE("metric construction rejects broken matrices") {
    GroundSet g = line({"0", "1", "2"});
    DiscreteMeasure point(g, {{"0", Rational(1)}});

    Mat ok = euclidean_metric(g);
    CHECK(ok[0][2] == 2);
    CHECK_NOTHROW(MetricInstance(g, ok, point, point));

    Mat bad = ok;
    bad[0][1] = 2;  // asymmetric
    CHECK_THROWS_AS(MetricInstance(g, bad, point, point), InvalidMetric);

    bad = ok;
    bad[1][1] = 1;
    CHECK_THROWS_AS(MetricInstance(g, bad, point, point), InvalidMetric);

    bad = ok;
    bad[0][2] = 5;
    bad[2][0] = 5;  // skips the detour through 1
    CHECK_THROWS_AS(MetricInstance(g, bad, point, point), InvalidMetric);

    bad = ok;
    bad[0][1] = 0;
    bad[1][0] = 0;
    CHECK_THROWS_AS(MetricInstance(g, bad, point, point), InvalidMetric);

    CHECK_THROWS_AS(MetricInstance(g, Mat(2, Vec(2, Rational(0))), point, point),
                    InvalidMetric);
}

TEST_CASE("coordinate metrics") {
    GroundSet plane({{"o", {Rational(0), Rational(0)}},
                     {"p", {Rational(3), Rational(4)}},
                     {"q", {Rational(3), Rational(0)}}});
    Mat euhet = euclidean_metric(plane);
    CHECK(euhet[0][1] == 5);
    CHECK(euhet[0][2] == 3);
    CHECK(euhet[1][2] == 4);

    Mat taxi = l1_metric(plane);
    CHECK(taxi[0][1] == 7);
    CHECK(taxi[0][2] == 3);
    CHECK(taxi[1][2] == 4);

    GroundSet diagonal({{"o", {Rational(0), Rational(0)}},
                        {"d", {Rational(1), Rational(1)}}});
    CHECK_THROWS_AS(euclidean_metric(diagonal), InvalidMetric);
    CHECK(l1_metric(diagonal)[0][1] == 2);
}

TEST_CASE("duality on a single step") {
    MetricInstance inst = line_instance({"0", "1"}, {{"0", Rational(1)}}, {{"1", Rational(1)}});
    DualSolution dual = kantorovich_potential(inst);
    CHECK(dual.value == 1);
    CHECK(dual.potential.values[1] - dual.potential.values[0] == 1);

    PrimalSolution primal = w1_primal(inst);
    CHECK(primal.value == 1);
    CHECK(primal.plan.pi == Mat{{Rational(1)}});

    RayDecomposition rays = transport_rays(inst, dual.potential);
    CHECK(rays.rays == std::vector<std::vector<std::size_t>>{{0, 1}});
    CHECK(rays.branch_points.empty());

    BalanceReport balance = ray_mass_balance(inst, rays);
    CHECK(balance.applicable);
    CHECK(balance.balanced);
    CHECK(balance.differences == std::vector<Rational>{Rational(0)});
}

TEST_CASE("identical marginals cost nothing") {
    MetricInstance inst = line_instance({"0", "1", "2"},
                                        {{"0", Rational(1) / 2}, {"2", Rational(1) / 2}},
                                        {{"0", Rational(1) / 2}, {"2", Rational(1) / 2}});
    CHECK(kantorovich_potential(inst).value == 0);
    CHECK(w1_primal(inst).value == 0);
}

TEST_CASE("interleaved atoms share one ray") {
    MetricInstance inst = line_instance({"0", "1", "2", "3"},
                                        {{"0", Rational(1) / 2}, {"2", Rational(1) / 2}},
                                        {{"1", Rational(1) / 2}, {"3", Rational(1) / 2}});
    DualSolution dual = kantorovich_potential(inst);
    PrimalSolution primal = w1_primal(inst);
    CHECK(dual.value == 1);
    CHECK(primal.value == 1);

    const Potential slope{{Rational(0), Rational(1), Rational(2), Rational(3)}};
    RayDecomposition rays = transport_rays(inst, slope);
    CHECK(rays.rays == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});
    CHECK(rays.branch_points.empty());
    CHECK(ray_mass_balance(inst, rays).balanced);
}

TEST_CASE("a flat stretch separates two rays") {
    MetricInstance inst = line_instance(
        {"0", "1", "10", "11"},
        {{"0", Rational(1) / 2}, {"10", Rational(1) / 2}},
        {{"1", Rational(1) / 2}, {"11", Rational(1) / 2}});
    const Potential flat_gap{{Rational(0), Rational(1), Rational(1), Rational(2)}};

    RayDecomposition rays = transport_rays(inst, flat_gap);
    CHECK(rays.rays == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});
    CHECK(rays.branch_points.empty());

    BalanceReport balance = ray_mass_balance(inst, rays);
    CHECK(balance.applicable);
    CHECK(balance.balanced);
    CHECK(balance.differences == std::vector<Rational>{Rational(0), Rational(0)});

    // ray maximality: every outside point misses some tightness
    for (const auto& ray : rays.rays)
        for (std::size_t p = 0; p < inst.ground.size(); ++p) {
            if (std::find(ray.begin(), ray.end(), p) != ray.end())
                continue;
            bool all_tight = true;
            for (std::size_t a : ray)
                if (rational_abs(flat_gap.values[p] - flat_gap.values[a]) != inst.metric[p][a])
                    all_tight = false;
            CHECK_FALSE(all_tight);
        }
}

TEST_CASE("a branch point is reported and the balance check steps aside") {
    GroundSet g = line({"0", "1", "2"});
    Mat d = euclidean_metric(g);
    d[0][2] = Rational(3) / 2;  // bent geometry: ends closer than the path through 1
    d[2][0] = Rational(3) / 2;
    MetricInstance inst(g, d, DiscreteMeasure(g, {{"1", Rational(1)}}),
                        DiscreteMeasure(g, {{"0", Rational(1) / 2}, {"2", Rational(1) / 2}}));

    CHECK_THROWS_AS(transport_rays(inst, Potential{{Rational(0), Rational(1), Rational(2)}}),
                    NotLipschitz);

    const Potential tent{{Rational(0), Rational(1), Rational(0)}};
    RayDecomposition rays = transport_rays(inst, tent);
    CHECK(rays.rays == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}});
    CHECK(rays.branch_points == std::vector<std::size_t>{1});

    BalanceReport balance = ray_mass_balance(inst, rays);
    CHECK_FALSE(balance.applicable);
    CHECK(balance.differences == std::vector<Rational>{Rational(1) / 2, Rational(1) / 2});
}

TEST_CASE("an untouched point becomes a singleton ray") {
    MetricInstance inst = line_instance({"0", "1", "5"},
                                        {{"0", Rational(1)}},
                                        {{"1", Rational(1)}});
    const Potential v{{Rational(0), Rational(1), Rational(1)}};
    RayDecomposition rays = transport_rays(inst, v);
    CHECK(rays.rays == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
    CHECK(rays.branch_points.empty());
}

TEST_CASE("sampled instances close the duality gap and stay tight") {
    SplitMix64 rng(2024);
    int planar = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const bool plane = trial % 3 == 2;
        planar += plane ? 1 : 0;

        std::vector<GroundPoint> pts;
        std::set<Vec> seen;
        const long want = rng.range(3, 6);
        while (static_cast<long>(pts.size()) < want) {
            Vec c{Rational(rng.range(-6, 6))};
            if (plane)
                c.push_back(Rational(rng.range(-6, 6)));
            if (seen.insert(c).second)
                pts.push_back({"w" + std::to_string(pts.size()), c});
        }
        GroundSet g(std::move(pts));

        auto pick = [&](SplitMix64& r) {
            Vec masses(g.size(), Rational(0));
            Rational total = 0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                masses[i] = Rational(r.range(0, 3));
                total += masses[i];
            }
            if (total == 0) {
                masses[0] = 1;
                total = 1;
            }
            for (auto& m : masses)
                m /= total;
            return DiscreteMeasure(g, masses);
        };

        MetricInstance inst(g, plane ? l1_metric(g) : euclidean_metric(g), pick(rng), pick(rng));
        DualSolution dual = kantorovich_potential(inst);
        PrimalSolution primal = w1_primal(inst);
        CHECK(dual.value == primal.value);

        // complementary slackness: charged pairs are tight for the potential
        for (std::size_t xi = 0; xi < primal.plan.from.size(); ++xi)
            for (std::size_t yj = 0; yj < primal.plan.to.size(); ++yj) {
                if (primal.plan.pi[xi][yj] == 0)
                    continue;
                const std::size_t a = primal.plan.from[xi];
                const std::size_t b = primal.plan.to[yj];
                CHECK(rational_abs(dual.potential.values[a] - dual.potential.values[b]) ==
                      inst.metric[a][b]);
            }

        RayDecomposition rays = transport_rays(inst, dual.potential);
        RayDecomposition again = transport_rays(inst, dual.potential);
        CHECK(rays.rays == again.rays);
        BalanceReport balance = ray_mass_balance(inst, rays);
        if (balance.applicable)
            CHECK(balance.balanced);
    }
    CHECK(planar >= 3);
}
