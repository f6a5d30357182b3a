#include <doctest.h>

#include <fcone/errors.hpp>
#include <fcone/jsonio.hpp>
#include <fcone/scenarios.hpp>
#include <fcone/svg.hpp>

using namespace fcone;

namespace {

Instance reversed(const Instance& inst) {
    return Instance{inst.ground, inst.nu, inst.mu, inst.gens, inst.weight};
}

}  // namespace

TEST_CASE("instance serialization round-trips byte for byte") {
    Instance inst = gen_classic("two_islands");
    std::string text = dump_json(instance_to_json(inst));

    Instance back = instance_from_json(parse_json_text(text));
    CHECK(back.ground.size() == inst.ground.size());
    CHECK(back.mu.masses() == inst.mu.masses());
    CHECK(back.nu.masses() == inst.nu.masses());
    CHECK(back.gens.lineality_flags() == inst.gens.lineality_flags());
    CHECK(back.weight == inst.weight);

    CHECK(dump_json(instance_to_json(back)) == text);
}

TEST_CASE("grid instances survive serialization") {
    GridScenario sc = grid_single();
    std::string text = dump_json(instance_to_json(sc.instance));
    Instance back = instance_from_json(parse_json_text(text));

    CHECK(back.ground.dimension() == 2);
    CHECK(back.gens.count() == 6);
    CHECK(back.gens.fully_lineal());
    CHECK(back.nu.masses() == sc.instance.nu.masses());
    CHECK(dump_json(instance_to_json(back)) == text);
}

TEST_CASE("tabulated and harmonic generator kinds round-trip") {
    Json j;
    j["dimension"] = 2;
    j["points"] = Json::array({Json{{"id", "a"}, {"coords", {"0", "0"}}},
                               Json{{"id", "b"}, {"coords", {"3", "4"}}}});
    j["mu"] = Json{{"a", "1"}};
    j["nu"] = Json{{"b", "1"}};
    j["generators"] = Json::array(
        {Json{{"kind", "harmonic2d"}, {"m", 2}, {"part", "im"}},
         Json{{"kind", "tabulated"}, {"values", Json{{"a", "1/3"}, {"b", "-2"}}}}});
    j["weight"] = "one_plus_maxnorm";

    Instance inst = instance_from_json(j);
    CHECK(inst.gens.generators()[0].values[1] == 24);  // Im (3+4i)^2
    CHECK(inst.gens.generators()[0].declared_symmetric);
    CHECK(inst.gens.generators()[1].values[0] == Rational(1, 3));
    CHECK_FALSE(inst.gens.generators()[1].declared_symmetric);
    CHECK(inst.weight == Weight::OnePlusMaxnorm);

    std::string text = dump_json(instance_to_json(inst));
    CHECK(dump_json(instance_to_json(instance_from_json(parse_json_text(text)))) == text);
}

TEST_CASE("malformed input is rejected with the right error") {
    CHECK_THROWS_AS(parse_json_text("{ not json"), ParseError);

    Json good = instance_to_json(gen_classic("symmetric_split"));

    Json no_mu = good;
    no_mu.erase("mu");
    CHECK_THROWS_AS(instance_from_json(no_mu), SchemaError);

    Json bad_weight = good;
    bad_weight["weight"] = "heavy";
    CHECK_THROWS_AS(instance_from_json(bad_weight), SchemaError);

    Json bad_kind = good;
    bad_kind["generators"][0]["kind"] = "mystery";
    CHECK_THROWS_AS(instance_from_json(bad_kind), SchemaError);

    Json float_mass = good;
    float_mass["mu"]["0"] = 0.5;
    CHECK_THROWS_AS(instance_from_json(float_mass), SchemaError);

    Json bad_rational = good;
    bad_rational["mu"]["0"] = "one half";
    CHECK_THROWS_AS(instance_from_json(bad_rational), ParseError);

    Json short_coords = good;
    short_coords["dimension"] = 2;
    CHECK_THROWS_AS(instance_from_json(short_coords), SchemaError);
}

TEST_CASE("pair sets and subset lists parse and validate") {
    Instance inst = gen_classic("two_islands");

    PairSet u = pairs_from_json(parse_json_text(R"({"pairs":[["-2","3"],["2","-3"]]})"),
                                inst.ground);
    REQUIRE(u.pairs.size() == 2);
    CHECK(u.pairs[0].first == inst.ground.index_of("-2"));
    CHECK(u.pairs[0].second == inst.ground.index_of("3"));

    Json back = pairs_to_json(u, inst.ground);
    CHECK(pairs_from_json(back, inst.ground).pairs == u.pairs);

    CHECK_THROWS_AS(pairs_from_json(parse_json_text(R"({"pairs":[["-2"]]})"), inst.ground),
                    SchemaError);
    CHECK_THROWS_AS(pairs_from_json(parse_json_text(R"({"pairs":[["-2","99"]]})"), inst.ground),
                    SchemaError);

    std::vector<std::vector<std::size_t>> subsets =
        subsets_from_json(parse_json_text("[[0],[0,1]]"), 2);
    REQUIRE(subsets.size() == 2);
    CHECK(subsets[1] == std::vector<std::size_t>{0, 1});
    CHECK(subsets_to_json(subsets).dump() == "[[0],[0,1]]");

    CHECK_THROWS_AS(subsets_from_json(parse_json_text("[[7]]"), 2), SchemaError);
    CHECK_THROWS_AS(subsets_from_json(parse_json_text("[[-1]]"), 2), SchemaError);
}

TEST_CASE("order reports carry plans or verified certificates") {
    Instance inst = gen_classic("symmetric_split");

    Json pos = order_report_json(inst, 0, check_f_order(inst, 0));
    CHECK(pos["in_order"] == true);
    CHECK(pos["plan"]["delta"] == "0");
    CHECK(pos["plan"]["entries"].size() == 2);

    Instance swapped = reversed(inst);
    Json neg = order_report_json(swapped, 0, check_f_order(swapped, 0));
    CHECK(neg["in_order"] == false);
    CHECK(neg["certificate_verified"] == true);
    REQUIRE(neg.contains("separating"));
    Rational gap = parse_rational(neg["separating"]["mu_integral"].get<std::string>()) -
                   parse_rational(neg["separating"]["nu_integral"].get<std::string>());
    CHECK(gap > 0);
}

TEST_CASE("paving and support reports are reproducible") {
    Instance inst = gen_classic("two_islands");

    Paving p1 = build_paving(inst);
    Paving p2 = build_paving(inst);
    std::string r1 = dump_json(paving_report_json(inst, p1, check_b_membership(p1, inst)));
    std::string r2 = dump_json(paving_report_json(inst, p2, check_b_membership(p2, inst)));
    CHECK(r1 == r2);

    Json rep = paving_report_json(inst, p1, check_b_membership(p1, inst));
    REQUIRE(rep["classes"].size() == 2);
    CHECK(rep["classes"][0]["atoms"] == Json::array({"-2"}));
    CHECK(rep["checks"]["dichotomy"] == true);
    CHECK(rep["checks"]["fully_lineal"] == true);

    SupportResult sup = maximal_support_plan(inst, 0);
    Json srep = support_report_json(inst, 0, sup);
    CHECK(srep["support"].size() == 2);
    CHECK(srep["support"][0]["to"] == Json::array({"-3", "-1"}));

    std::string csv = plan_to_csv(sup.plan, inst.ground);
    CHECK(csv.substr(0, 12) == "from,to,mass");
    CHECK(csv.find("-2,-3,1/4") != std::string::npos);
}

TEST_CASE("apirc and polar reports") {
    Instance inst = gen_classic("two_islands");

    ApircPaving ap = build_apirc(inst, {{0, 1}});
    Json arep = apirc_report_json(inst, ap);
    CHECK(arep["subsets"].dump() == "[[0,1]]");
    CHECK(arep["joint_classes"].size() == 2);
    CHECK(arep["supp_inclusion"] == true);

    // (-2, -2) targets a ν-null column inside the source component, so the
    // section hypothesis holds and the pair is trivially polar
    PairSet null_col;
    null_col.pairs = {{inst.ground.index_of("-2"), inst.ground.index_of("-2")}};
    PolarReport rep = check_polar_theorem(null_col, inst, 0);
    Json prep = polar_report_json(inst, null_col, rep);
    CHECK(prep["polar"] == true);
    CHECK(prep["max_mass"] == "0");
    CHECK(prep["trivially_polar"] == true);
    CHECK(prep["equivalence_holds"] == true);
    CHECK(prep["pairs"].dump() == R"([["-2","-2"]])");
}

TEST_CASE("metric instances parse every metric form") {
    Json j;
    j["dimension"] = 2;
    j["points"] = Json::array({Json{{"id", "o"}, {"coords", {"0", "0"}}},
                               Json{{"id", "p"}, {"coords", {"3", "4"}}}});
    j["mu"] = Json{{"o", "1"}};
    j["nu"] = Json{{"p", "1"}};

    j["metric"] = "euclidean";
    MetricInstance eu = metric_instance_from_json(j);
    CHECK(eu.metric[0][1] == 5);

    j["metric"] = "l1";
    MetricInstance l1 = metric_instance_from_json(j);
    CHECK(l1.metric[0][1] == 7);

    j["metric"] = Json::array({Json::array({"0", "2"}), Json::array({"2", "0"})});
    MetricInstance ex = metric_instance_from_json(j);
    CHECK(ex.metric[0][1] == 2);

    std::string text = dump_json(metric_instance_to_json(ex));
    MetricInstance back = metric_instance_from_json(parse_json_text(text));
    CHECK(back.metric == ex.metric);
    CHECK(dump_json(metric_instance_to_json(back)) == text);

    j["metric"] = "taxicab";
    CHECK_THROWS_AS(metric_instance_from_json(j), SchemaError);

    DualSolution dual = kantorovich_potential(ex);
    PrimalSolution primal = w1_primal(ex);
    RayDecomposition rays = transport_rays(ex, dual.potential);
    BalanceReport balance = ray_mass_balance(ex, rays);
    Json rrep = rays_report_json(ex, dual, primal, rays, balance);
    CHECK(rrep["wasserstein"] == "2");
    CHECK(rrep["rays"].size() == 1);
    CHECK(rrep["balance"]["balanced"] == true);

    std::string csv = rays_to_csv(rays, ex.ground);
    CHECK(csv.find("0,o") != std::string::npos);
}

TEST_CASE("svg rendering") {
    Instance islands = gen_classic("two_islands");
    Paving paving = build_paving(islands);
    std::string svg = paving_svg(islands, paving);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<title>-2</title>") != std::string::npos);
    CHECK(svg == paving_svg(islands, build_paving(islands)));

    GridScenario grid = grid_single();
    std::string grid_svg = paving_svg(grid.instance, build_paving(grid.instance));
    CHECK(grid_svg.find("<title>1,1</title>") != std::string::npos);

    // grid ids contain commas, so the csv writer has to quote them
    SupportResult sup = maximal_support_plan(grid.instance, 0);
    std::string csv = plan_to_csv(sup.plan, grid.instance.ground);
    CHECK(csv.find("\"1,1\",\"0,1\",1/4") != std::string::npos);

    std::vector<GroundPoint> cube;
    cube.push_back({"a", {Rational(0), Rational(0), Rational(0)}});
    cube.push_back({"b", {Rational(1), Rational(0), Rational(0)}});
    GroundSet g3(std::move(cube));
    DiscreteMeasure one(g3, std::map<std::string, Rational>{{"a", Rational(1)}});
    GeneratorSpec gx;
    gx.kind = GenKind::Affine;
    gx.affine_coeffs = {Rational(1), Rational(0), Rational(0)};
    Instance inst3{g3, one, one, build_generator_set(g3, {gx}), Weight::One};
    CHECK_THROWS_AS(paving_svg(inst3, Paving{}), DimensionMismatch);
}
