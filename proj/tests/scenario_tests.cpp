#include <doctest.h>

#include <algorithm>
#include <fcone/errors.hpp>
#include <fcone/order.hpp>
#include <fcone/paving.hpp>
#include <fcone/scenarios.hpp>

using namespace fcone;

namespace {

const GridScenario& two_domains() {
    static const GridScenario sc = grid_two_domains();
    return sc;
}

Rational nu_at(const Instance& inst, const std::string& id) {
    return inst.nu.mass(inst.ground.index_of(id));
}

}  // namespace

TEST_CASE("classic fixtures are pinned") {
    SUBCASE("submartingale shift") {
        Instance inst = gen_classic("submartingale_shift");
        REQUIRE(inst.ground.size() == 4);
        CHECK(inst.ground.point(0).coords[0] == 0);
        CHECK(inst.ground.point(2).coords[0] == Rational(3, 2));
        CHECK(inst.mu.mass(inst.ground.index_of("0")) == 1);
        CHECK(inst.nu.mass(inst.ground.index_of("3/2")) == Rational(1, 3));
        REQUIRE(inst.gens.count() == 1);
        CHECK_FALSE(inst.gens.lineality_flags()[0]);
        CHECK(inst.weight == Weight::One);
        CHECK(check_f_order(inst, 0).in_order);

        Paving paving = build_paving(inst);
        REQUIRE(paving.classes.size() == 1);
        CHECK(paving.classes[0].atoms == std::vector<std::size_t>{0});
        CHECK(paving.classes[0].component.affine_dim == 1);
    }

    SUBCASE("symmetric split") {
        Instance inst = gen_classic("symmetric_split");
        REQUIRE(inst.gens.count() == 2);
        CHECK(inst.gens.fully_lineal());
        CHECK(check_f_order(inst, 0).in_order);
        CHECK(nu_at(inst, "-1") == Rational(1, 2));
    }

    SUBCASE("two islands") {
        Instance inst = gen_classic("two_islands");
        REQUIRE(inst.ground.size() == 6);
        Paving paving = build_paving(inst);
        REQUIRE(paving.classes.size() == 2);
        CHECK(paving.classes[0].atoms == std::vector<std::size_t>{1});
        CHECK(paving.classes[1].atoms == std::vector<std::size_t>{4});
    }

    SUBCASE("relaxed threshold kicks in at four") {
        Instance inst = gen_classic("relaxed_threshold");
        CHECK(inst.weight == Weight::OnePlusMaxnorm);
        CHECK_FALSE(check_f_order(inst, 0).in_order);
        CHECK_FALSE(check_f_order(inst, Rational(39, 10)).in_order);
        OrderVerdict at_four = check_f_order(inst, 4);
        CHECK(at_four.in_order);
        CHECK(plan_feasible(inst, at_four.witness));
    }

    CHECK_THROWS_AS(gen_classic("nope"), UnknownScenario);
}

TEST_CASE("plus-shaped single domain stops uniformly") {
    GridScenario sc = grid_single();
    const Instance& inst = sc.instance;

    REQUIRE(inst.ground.size() == 5);
    CHECK(inst.mu.mass(inst.ground.index_of("1,1")) == 1);
    for (const char* b : {"0,1", "1,0", "1,2", "2,1"}) {
        CHECK(nu_at(inst, b) == Rational(1, 4));
    }

    REQUIRE(inst.gens.count() == 6);
    CHECK(sc.harmonic_indices == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(sc.affine_indices == std::vector<std::size_t>{4, 5});

    // the four boundary indicators span every direction, so even the affine
    // generators come out two-sided
    CHECK(inst.gens.fully_lineal());
    CHECK(check_f_order(inst, 0).in_order);

    Paving paving = build_paving(inst);
    REQUIRE(paving.classes.size() == 1);
    CHECK(paving.classes[0].supports.at(inst.ground.index_of("1,1")).size() == 4);

    REQUIRE(sc.nested_subsets.size() == 3);
    CHECK(sc.nested_subsets[0].size() == 2);
    CHECK(sc.nested_subsets[1].size() == 3);
    CHECK(sc.nested_subsets[2].size() == 6);
}

TEST_CASE("grid scenario guards") {
    GridDomain unit;
    unit.interior = {{true}};

    SUBCASE("starts must be strictly interior") {
        CHECK_THROWS_AS(gen_grid_harmonic({unit}, {GridStart{1, 0, Rational(1)}}),
                        StartOnBoundary);
        CHECK_THROWS_AS(gen_grid_harmonic({unit}, {GridStart{9, 9, Rational(1)}}),
                        StartOnBoundary);
    }

    SUBCASE("interior must be connected and nonempty") {
        GridDomain gap;
        gap.interior = {{true, false, true}};
        CHECK_THROWS_AS(gen_grid_harmonic({gap}, {GridStart{0, 0, Rational(1)}}),
                        DisconnectedInterior);

        GridDomain empty;
        empty.interior = {{false}};
        CHECK_THROWS_AS(gen_grid_harmonic({empty}, {GridStart{0, 0, Rational(1)}}),
                        DisconnectedInterior);
    }

    SUBCASE("domains may not share or touch points") {
        GridDomain other = unit;
        other.ox = 2;  // point sets share (1,0)
        CHECK_THROWS_AS(gen_grid_harmonic({unit, other}, {GridStart{0, 0, Rational(1, 2)},
                                                          GridStart{2, 0, Rational(1, 2)}}),
                        DomainsAdjacent);

        other.ox = 3;  // (1,0) and (2,0) are neighbors
        CHECK_THROWS_AS(gen_grid_harmonic({unit, other}, {GridStart{0, 0, Rational(1, 2)},
                                                          GridStart{3, 0, Rational(1, 2)}}),
                        DomainsAdjacent);

        other.ox = 4;  // a clear gap is fine
        CHECK_NOTHROW(gen_grid_harmonic({unit, other}, {GridStart{0, 0, Rational(1, 2)},
                                                        GridStart{4, 0, Rational(1, 2)}}));
    }

    SUBCASE("a hole in the interior leaves the boundary ambiguous") {
        GridDomain ring;
        ring.interior = {{true, true, true}, {true, false, true}, {true, true, true}};
        CHECK_THROWS_AS(gen_grid_harmonic({ring}, {GridStart{0, 0, Rational(1)}}),
                        AmbiguousBoundary);
    }

    SUBCASE("degenerate inputs") {
        CHECK_THROWS_AS(gen_grid_harmonic({}, {GridStart{0, 0, Rational(1)}}), SchemaError);
        CHECK_THROWS_AS(gen_grid_harmonic({unit}, {}), SchemaError);
        CHECK_THROWS_AS(gen_grid_harmonic({unit}, {GridStart{0, 0, Rational(1, 2)},
                                                   GridStart{0, 0, Rational(1, 2)}}),
                        SchemaError);
    }
}

TEST_CASE("two-domain exit laws are exact harmonic measures") {
    const GridScenario& sc = two_domains();
    const Instance& inst = sc.instance;

    CHECK(inst.mu.mass(inst.ground.index_of("3,0")) == Rational(1, 2));
    CHECK(inst.mu.mass(inst.ground.index_of("3,4")) == Rational(1, 2));

    // every boundary vertex is hit with positive probability
    CHECK(sc.harmonic_indices.size() == 32);
    CHECK(inst.nu.support().size() == 32);

    // the nested domain is a plus shape, so its exit law is uniform
    for (const char* b : {"2,4", "4,4", "3,3", "3,5"}) {
        CHECK(nu_at(inst, b) == Rational(1, 8));
    }

    // the bowl is symmetric about x = 3 and the start sits on the axis
    CHECK(nu_at(inst, "0,-1") == nu_at(inst, "6,-1"));
    CHECK(nu_at(inst, "2,-1") == nu_at(inst, "4,-1"));
    CHECK(nu_at(inst, "-3,4") == nu_at(inst, "9,4"));
    CHECK(nu_at(inst, "-1,0") == nu_at(inst, "7,0"));

    // boundary indicators sum to one along any interior trajectory start
    Rational total;
    std::size_t start = inst.ground.index_of("3,0");
    for (std::size_t k : sc.harmonic_indices) total += inst.gens.generators()[k].values[start];
    CHECK(total == 1);

    CHECK(inst.gens.fully_lineal());
    CHECK(check_f_order(inst, 0).in_order);

    // rebuilding gives byte-identical measures
    GridScenario again = grid_two_domains();
    CHECK(again.instance.nu.masses() == inst.nu.masses());
    CHECK(again.instance.gens.count() == inst.gens.count());
}

TEST_CASE("nested generator subsets split the nested start off") {
    const GridScenario& sc = two_domains();
    ApircPaving ap = build_apirc(sc.instance, sc.nested_subsets);

    REQUIRE(ap.pavings.size() == 3);
    CHECK(ap.pavings[0].classes.size() == 1);  // affine directions see one big hull
    CHECK(ap.pavings[1].classes.size() == 2);  // one bowl indicator separates
    CHECK(ap.pavings[2].classes.size() == 2);

    REQUIRE(ap.joint_classes.size() == 2);
    std::size_t bowl_start = sc.instance.ground.index_of("3,0");
    std::size_t nested_start = sc.instance.ground.index_of("3,4");
    CHECK(ap.joint_classes[0] == std::vector<std::size_t>{bowl_start});
    CHECK(ap.joint_classes[1] == std::vector<std::size_t>{nested_start});
    CHECK(ap.supp_inclusion);
}

TEST_CASE("harmonic polynomial tables") {
    std::vector<GroundPoint> pts;
    pts.push_back({"a", {Rational(3), Rational(4)}});
    pts.push_back({"b", {Rational(1, 2), Rational(1, 3)}});
    pts.push_back({"c", {Rational(-1, 2), Rational(0)}});
    GroundSet ground(std::move(pts));

    SUBCASE("exact values") {
        std::vector<GeneratorSpec> specs = gen_harmonic_polynomials(ground, 3);
        REQUIRE(specs.size() == 6);
        for (const GeneratorSpec& s : specs) CHECK(s.kind == GenKind::Tabulated);

        CHECK(specs[0].tabulated.at("a") == 3);   // Re z
        CHECK(specs[1].tabulated.at("a") == 4);   // Im z
        CHECK(specs[2].tabulated.at("a") == -7);  // Re z^2
        CHECK(specs[3].tabulated.at("a") == 24);  // Im z^2
        CHECK(specs[4].tabulated.at("a") == -117);
        CHECK(specs[5].tabulated.at("a") == 44);

        CHECK(specs[2].tabulated.at("b") == Rational(5, 36));
        CHECK(specs[3].tabulated.at("b") == Rational(1, 3));
    }

    SUBCASE("rounded values snap to the grid") {
        std::vector<GeneratorSpec> specs = gen_harmonic_polynomials(ground, 2, 6);
        CHECK(specs[2].tabulated.at("b") == Rational(1, 6));  // 5/36 rounds up
        CHECK(specs[3].tabulated.at("b") == Rational(1, 3));  // already on the grid
        for (const GeneratorSpec& s : specs) {
            for (const auto& [id, v] : s.tabulated) {
                CHECK(boost::multiprecision::denominator(Rational(v * 6)) == 1);
            }
        }

        std::vector<GeneratorSpec> thirds = gen_harmonic_polynomials(ground, 1, 3);
        CHECK(thirds[0].tabulated.at("c") == Rational(-1, 3));  // tie rounds up
    }

    SUBCASE("bad inputs") {
        GroundSet flat(
            {GroundPoint{"0", {Rational(0)}}, GroundPoint{"1", {Rational(1)}}});
        CHECK_THROWS_AS(gen_harmonic_polynomials(flat, 2), NotPlanar);
        CHECK_THROWS_AS(gen_harmonic_polynomials(ground, 0), SchemaError);
        CHECK_THROWS_AS(gen_harmonic_polynomials(ground, 2, 0), SchemaError);
    }
}
