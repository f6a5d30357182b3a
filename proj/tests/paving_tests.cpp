#include <doctest.h>

#include <fcone/instancegen.hpp>
#include <fcone/paving.hpp>
#include <fcone/polytope.hpp>

using namespace fcone;

namespace {

Vec vec(std::initializer_list<long> entries) {
    Vec v;
    for (long e : entries)
        v.push_back(Rational(e));
    return v;
}

GroundSet line(std::initializer_list<const char*> xs) {
    std::vector<GroundPoint> pts;
    for (const char* x : xs)
        pts.push_back({x, {parse_rational(x)}});
    return GroundSet(std::move(pts));
}

GeneratorSpec affine(Vec coeffs, Rational constant = Rational(0)) {
    GeneratorSpec s;
    s.kind = GenKind::Affine;
    s.affine_coeffs = std::move(coeffs);
    s.affine_constant = std::move(constant);
    return s;
}

Instance two_islands() {
    GroundSet g = line({"-3", "-2", "-1", "1", "2", "3"});
    DiscreteMeasure mu(g, {{"-2", Rational(1) / 2}, {"2", Rational(1) / 2}});
    DiscreteMeasure nu(g, {{"-3", Rational(1) / 4},
                           {"-1", Rational(1) / 4},
                           {"1", Rational(1) / 4},
                           {"3", Rational(1) / 4}});
    GeneratorSet gs = build_generator_set(g, {affine({Rational(1)}), affine({Rational(-1)})});
    return {g, mu, nu, gs, Weight::One};
}

Instance touching_components() {
    GroundSet g = line({"-1", "-1/2", "0", "1/2", "1"});
    DiscreteMeasure mu(g, {{"-1/2", Rational(1) / 2}, {"1/2", Rational(1) / 2}});
    DiscreteMeasure nu(
        g, {{"-1", Rational(1) / 4}, {"0", Rational(1) / 2}, {"1", Rational(1) / 4}});
    GeneratorSet gs = build_generator_set(g, {affine({Rational(1)}), affine({Rational(-1)})});
    return {g, mu, nu, gs, Weight::One};
}

}  // namespace

TEST_CASE("vertex filtering keeps extreme points only") {
    CHECK_THROWS_AS(make_polytope({}), EmptySupport);

    Polytope interval = make_polytope({vec({0}), vec({1}), vec({2}), vec({1})});
    CHECK(interval.vertices == Mat{vec({0}), vec({2})});
    CHECK(interval.affine_dim == 1);

    Polytope triangle =
        make_polytope({vec({0, 0}), vec({4, 0}), vec({1, 1}), vec({0, 4})});
    CHECK(triangle.vertices == Mat{vec({0, 0}), vec({4, 0}), vec({0, 4})});
    CHECK(triangle.affine_dim == 2);

    Polytope single = make_polytope({vec({3, 5}), vec({3, 5})});
    CHECK(single.vertices == Mat{vec({3, 5})});
    CHECK(single.affine_dim == 0);
}

TEST_CASE("hull and relative interior membership") {
    Polytope interval = make_polytope({vec({0}), vec({1})});
    CHECK(hull_contains(interval, vec({0})));
    CHECK(hull_contains(interval, Vec{Rational(1) / 3}));
    CHECK_FALSE(hull_contains(interval, vec({2})));
    CHECK_THROWS_AS(hull_contains(interval, vec({0, 0})), DimensionMismatch);

    CHECK(rint_contains(interval, Vec{Rational(1) / 2}));
    CHECK_FALSE(rint_contains(interval, vec({0})));
    CHECK_FALSE(rint_contains(interval, vec({1})));

    Polytope point = make_polytope({vec({7})});
    CHECK(rint_contains(point, vec({7})));
    CHECK_FALSE(rint_contains(point, vec({6})));
}

TEST_CASE("relative interiors of touching hulls stay apart") {
    Polytope a = make_polytope({vec({-1}), vec({1})});
    Polytope b = make_polytope({vec({0}), vec({2})});
    Polytope c = make_polytope({vec({1}), vec({3})});
    Polytope d = make_polytope({vec({-3}), vec({-1})});
    CHECK(rint_intersects(a, b));
    CHECK_FALSE(rint_intersects(d, c));
    CHECK_FALSE(rint_intersects(a, c));  // shared endpoint only
    CHECK(rint_intersects(a, a));
    CHECK_THROWS_AS(rint_intersects(a, make_polytope({vec({0, 0})})), DimensionMismatch);
}

TEST_CASE("hull comparison ignores redundant points and ordering") {
    Polytope a = make_polytope({vec({-1}), vec({1})});
    Polytope b = make_polytope({vec({-1}), vec({0}), vec({1})});
    Polytope c = make_polytope({vec({-1}), vec({2})});
    CHECK(hull_equal(a, b));
    CHECK_FALSE(hull_equal(a, c));

    Polytope square1 =
        make_polytope({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})});
    Polytope square2 =
        make_polytope({vec({1, 1}), vec({0, 0}), vec({0, 1}), vec({1, 0})});
    CHECK(hull_equal(square1, square2));
    CHECK_THROWS_AS(hull_equal(a, square1), DimensionMismatch);
}

TEST_CASE("minimal faces of an interval and a square") {
    Polytope interval = make_polytope({vec({0}), vec({1})});
    CHECK(gleason_part(interval, vec({1})).vertices == Mat{vec({1})});
    CHECK(hull_equal(gleason_part(interval, Vec{Rational(1) / 2}), interval));
    CHECK_THROWS_AS(gleason_part(interval, vec({2})), PointOutside);

    Polytope square =
        make_polytope({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})});
    Polytope bottom = gleason_part(square, Vec{Rational(1) / 2, Rational(0)});
    CHECK(hull_equal(bottom, make_polytope({vec({0, 0}), vec({1, 0})})));
    Polytope inner = gleason_part(square, Vec{Rational(1) / 2, Rational(1) / 2});
    CHECK(hull_equal(inner, square));
}

TEST_CASE("minimal faces are idempotent on sampled points") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Mat pts;
        const int count = static_cast<int>(rng.range(3, 6));
        for (int i = 0; i < count; ++i)
            pts.push_back(vec({rng.range(-4, 4), rng.range(-4, 4)}));
        Polytope p = make_polytope(pts);

        Vec point(2, Rational(0));
        Rational total = 0;
        for (const Vec& v : pts) {
            Rational w = Rational(rng.range(0, 4));
            if (total == 0 && w == 0)
                w = 1;
            point[0] += w * v[0];
            point[1] += w * v[1];
            total += w;
        }
        point[0] /= total;
        point[1] /= total;

        Polytope face = gleason_part(p, point);
        CHECK(hull_equal(gleason_part(face, point), face));
    }
}

TEST_CASE("two islands split into two classes") {
    Instance inst = two_islands();
    Paving p = build_paving(inst);

    REQUIRE(p.classes.size() == 2);
    CHECK(p.classes[0].atoms == std::vector<std::size_t>{1});
    CHECK(p.classes[1].atoms == std::vector<std::size_t>{4});
    CHECK(p.classes[0].component.vertices == Mat{vec({1, -3}), vec({1, -1})});
    CHECK(p.classes[1].component.vertices == Mat{vec({1, 1}), vec({1, 3})});
    CHECK(p.classes[0].supports.at(1) == std::vector<std::size_t>{0, 2});
    CHECK(p.classes[1].supports.at(4) == std::vector<std::size_t>{3, 5});
    CHECK(p.atom_class.at(1) == 0);
    CHECK(p.atom_class.at(4) == 1);
    CHECK_FALSE(rint_intersects(p.classes[0].component, p.classes[1].component));

    BMembershipReport report = check_b_membership(p, inst);
    CHECK(report.fully_lineal);
    CHECK_FALSE(report.lineality_trivial);
    CHECK(report.all_pass());

    // a second run reproduces the partition bit for bit
    Paving again = build_paving(inst);
    REQUIRE(again.classes.size() == p.classes.size());
    for (std::size_t c = 0; c < p.classes.size(); ++c) {
        CHECK(again.classes[c].atoms == p.classes[c].atoms);
        CHECK(again.classes[c].component.vertices == p.classes[c].component.vertices);
    }
}

TEST_CASE("a symmetric split keeps its atom inside the component") {
    GroundSet g = line({"-1", "0", "1"});
    DiscreteMeasure mu(g, {{"0", Rational(1)}});
    DiscreteMeasure nu(g, {{"-1", Rational(1) / 2}, {"1", Rational(1) / 2}});
    GeneratorSet gs = build_generator_set(g, {affine({Rational(1)}), affine({Rational(-1)})});
    Instance inst{g, mu, nu, gs, Weight::One};

    Paving p = build_paving(inst);
    REQUIRE(p.classes.size() == 1);
    CHECK(p.classes[0].component.vertices == Mat{vec({1, -1}), vec({1, 1})});
    CHECK(rint_contains(p.classes[0].component, gs.phi(1)));
    CHECK(check_b_membership(p, inst).all_pass());
}

TEST_CASE("a one-sided shift leaves the start outside its component") {
    GroundSet g = line({"0", "1", "3/2", "2"});
    DiscreteMeasure mu(g, {{"0", Rational(1)}});
    DiscreteMeasure nu(g, {{"1", Rational(1) / 3},
                           {"3/2", Rational(1) / 3},
                           {"2", Rational(1) / 3}});
    GeneratorSet gs = build_generator_set(g, {affine({Rational(1)})});
    Instance inst{g, mu, nu, gs, Weight::One};

    Paving p = build_paving(inst);
    REQUIRE(p.classes.size() == 1);
    CHECK(p.classes[0].atoms == std::vector<std::size_t>{0});
    CHECK(p.classes[0].component.vertices == Mat{vec({1, 1}), vec({1, 2})});
    CHECK(p.classes[0].component.affine_dim == 1);
    CHECK(p.classes[0].supports.at(0) == std::vector<std::size_t>{1, 2, 3});
    CHECK_FALSE(hull_contains(p.classes[0].component, gs.phi(0)));

    BMembershipReport report = check_b_membership(p, inst);
    CHECK(report.lineality_trivial);
    CHECK_FALSE(report.fully_lineal);
    CHECK(report.all_pass());
}

TEST_CASE("shared-endpoint components meet in the same minimal face") {
    Instance inst = touching_components();
    Paving p = build_paving(inst);

    REQUIRE(p.classes.size() == 2);
    CHECK(p.classes[0].component.vertices == Mat{vec({1, -1}), vec({1, 0})});
    CHECK(p.classes[1].component.vertices == Mat{vec({1, 0}), vec({1, 1})});

    const Vec shared = vec({1, 0});
    Polytope left = gleason_part(p.classes[0].component, shared);
    Polytope right = gleason_part(p.classes[1].component, shared);
    CHECK(left.vertices == Mat{shared});
    CHECK(hull_equal(left, right));
}

TEST_CASE("projection membership for a mixed generator family") {
    GroundSet g({{"a", vec({0, 0})},
                 {"b", vec({1, 2})},
                 {"c", vec({-1, -2})},
                 {"d", vec({2, 0})}});
    DiscreteMeasure mu(g, {{"a", Rational(1)}});
    DiscreteMeasure nu(g, {{"b", Rational(1) / 2}, {"c", Rational(1) / 2}});
    GeneratorSet gs = build_generator_set(
        g, {affine(vec({0, 1})), affine(vec({0, -1})), affine(vec({1, 0}))});
    Instance inst{g, mu, nu, gs, Weight::One};

    REQUIRE(gs.lineality_flags() == std::vector<bool>{true, true, false});

    Paving p = build_paving(inst);
    REQUIRE(p.classes.size() == 1);
    CHECK(p.classes[0].component.vertices == Mat{vec({1, 2, 1}), vec({1, -2, -1})});

    BMembershipReport report = check_b_membership(p, inst);
    CHECK_FALSE(report.lineality_trivial);
    CHECK_FALSE(report.fully_lineal);
    CHECK(report.atoms == std::vector<std::size_t>{0});
    CHECK(report.all_pass());
}

TEST_CASE("a single subset reproduces the plain partition") {
    Instance inst = two_islands();
    ApircPaving a = build_apirc(inst, {{0, 1}});
    Paving direct = build_paving(inst);

    REQUIRE(a.pavings.size() == 1);
    REQUIRE(a.pavings[0].classes.size() == direct.classes.size());
    for (std::size_t c = 0; c < direct.classes.size(); ++c) {
        CHECK(a.pavings[0].classes[c].atoms == direct.classes[c].atoms);
        CHECK(a.pavings[0].classes[c].component.vertices ==
              direct.classes[c].component.vertices);
    }
    CHECK(a.joint_classes == std::vector<std::vector<std::size_t>>{{1}, {4}});
    CHECK(a.supp_inclusion);

    CHECK_THROWS_AS(build_apirc(inst, {}), EmptySet);
}

TEST_CASE("subset pavings meet to the joint partition") {
    GroundSet g({{"e", vec({0, 0})},
                 {"f", vec({1, 4})},
                 {"p", vec({-1, 0})},
                 {"q", vec({1, 0})},
                 {"r", vec({0, 4})},
                 {"s", vec({2, 4})}});
    DiscreteMeasure mu(g, {{"e", Rational(1) / 2}, {"f", Rational(1) / 2}});
    DiscreteMeasure nu(g, {{"p", Rational(1) / 4},
                           {"q", Rational(1) / 4},
                           {"r", Rational(1) / 4},
                           {"s", Rational(1) / 4}});
    GeneratorSet gs = build_generator_set(g, {affine(vec({1, 0})), affine(vec({-1, 0})),
                                              affine(vec({0, 1})), affine(vec({0, -1}))});
    Instance inst{g, mu, nu, gs, Weight::One};

    // the horizontal directions alone cannot tell the two starts apart
    ApircPaving horizontal = build_apirc(inst, {{0, 1}});
    CHECK(horizontal.joint_classes == std::vector<std::vector<std::size_t>>{{0, 1}});

    // the vertical pair separates them; the meet keeps the separation
    ApircPaving joint = build_apirc(inst, {{0, 1}, {2, 3}});
    REQUIRE(joint.pavings.size() == 2);
    CHECK(joint.pavings[0].classes.size() == 1);
    CHECK(joint.pavings[1].classes.size() == 2);
    CHECK(joint.joint_classes == std::vector<std::vector<std::size_t>>{{0}, {1}});
    CHECK(joint.atom_joint.at(0) == 0);
    CHECK(joint.atom_joint.at(1) == 1);
    CHECK(joint.supp_inclusion);

    // the full-cone paving refines the joint one as well
    Paving full = build_paving(inst);
    CHECK(full.classes.size() == 2);
}

TEST_CASE("apirc rejects measures outside the full order") {
    GroundSet g = line({"0", "1"});
    DiscreteMeasure mu(g, {{"1", Rational(1)}});
    DiscreteMeasure nu(g, {{"0", Rational(1)}});
    GeneratorSet gs = build_generator_set(g, {affine({Rational(1)})});
    Instance inst{g, mu, nu, gs, Weight::One};
    CHECK_THROWS_AS(build_apirc(inst, {{0}}), NotInOrderError);
}

TEST_CASE("sampled instances satisfy the dichotomy and the support constraint") {
    int ordered = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Instance inst = random_instance(seed);
        if (!check_f_order(inst, Rational(0)).in_order)
            continue;
        ++ordered;

        Paving p = build_paving(inst);  // DichotomyViolation would fail the test
        for (std::size_t a = 0; a < p.classes.size(); ++a)
            for (std::size_t b = a + 1; b < p.classes.size(); ++b) {
                CHECK_FALSE(rint_intersects(p.classes[a].component, p.classes[b].component));
                CHECK_FALSE(hull_equal(p.classes[a].component, p.classes[b].component));
            }

        SupportResult sup = maximal_support_plan(inst, Rational(0));
        for (std::size_t xi = 0; xi < sup.plan.from.size(); ++xi) {
            const PavingClass& cls = p.classes[p.atom_class.at(sup.plan.from[xi])];
            for (std::size_t yj = 0; yj < sup.plan.to.size(); ++yj)
                if (sup.support[xi][yj])
                    CHECK(hull_contains(cls.component, inst.gens.phi(sup.plan.to[yj])));
        }
    }
    CHECK(ordered >= 5);
}
