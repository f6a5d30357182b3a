#include "fcone/jsonio.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "fcone/errors.hpp"

namespace fcone {

namespace {

const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t index_field(const Json& j, const std::string& what) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw SchemaError(what + " must be a nonnegative integer");
    }
    long long v = j.get<long long>();
    if (v < 0) throw SchemaError(what + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

Rational rational_field(const Json& j, const std::string& what) {
    if (!j.is_string()) throw SchemaError(what + " must be a rational string");
    return parse_rational(j.get<std::string>());
}

std::string string_field(const Json& j, const std::string& what) {
    if (!j.is_string()) throw SchemaError(what + " must be a string");
    return j.get<std::string>();
}

Vec vec_field(const Json& j, const std::string& what) {
    if (!j.is_array()) throw SchemaError(what + " must be an array of rational strings");
    Vec out;
    out.reserve(j.size());
    for (const Json& e : j) out.push_back(rational_field(e, what + " entry"));
    return out;
}

std::map<std::string, Rational> mass_map(const Json& j, const std::string& what) {
    if (!j.is_object()) throw SchemaError(what + " must be an object of id -> mass");
    std::map<std::string, Rational> out;
    for (const auto& [id, v] : j.items()) out[id] = rational_field(v, what + "[" + id + "]");
    return out;
}

GroundSet ground_from_json(const Json& j) {
    std::size_t dim = index_field(field(j, "dimension"), "dimension");

    const Json& jpoints = field(j, "points");
    if (!jpoints.is_array()) throw SchemaError("points must be an array");
    std::vector<GroundPoint> points;
    points.reserve(jpoints.size());
    for (const Json& p : jpoints) {
        GroundPoint gp;
        gp.id = string_field(field(p, "id"), "point id");
        gp.coords = vec_field(field(p, "coords"), "coords of " + gp.id);
        if (gp.coords.size() != dim) {
            throw SchemaError("point " + gp.id + " has " + std::to_string(gp.coords.size()) +
                              " coordinates, expected " + std::to_string(dim));
        }
        points.push_back(std::move(gp));
    }
    return GroundSet(std::move(points));
}

GeneratorSpec spec_from_json(const Json& j, std::size_t which) {
    std::string where = "generators[" + std::to_string(which) + "]";
    if (!j.is_object()) throw SchemaError(where + " must be an object");
    std::string kind = string_field(field(j, "kind"), where + ".kind");

    GeneratorSpec spec;
    if (kind == "affine") {
        spec.kind = GenKind::Affine;
        spec.affine_coeffs = vec_field(field(j, "coeffs"), where + ".coeffs");
        if (j.contains("constant")) {
            spec.affine_constant = rational_field(j["constant"], where + ".constant");
        }
    } else if (kind == "tabulated") {
        spec.kind = GenKind::Tabulated;
        spec.tabulated = mass_map(field(j, "values"), where + ".values");
    } else if (kind == "harmonic2d") {
        spec.kind = GenKind::Harmonic2D;
        std::size_t m = index_field(field(j, "m"), where + ".m");
        if (m == 0) throw SchemaError(where + ".m must be a positive integer");
        spec.harm_m = static_cast<int>(m);
        std::string part = string_field(field(j, "part"), where + ".part");
        if (part != "re" && part != "im") throw SchemaError(where + ".part must be re or im");
        spec.harm_re = part == "re";
    } else if (kind == "grid_harmonic") {
        spec.kind = GenKind::GridHarmonic;
        spec.grid_boundary = string_field(field(j, "boundary"), where + ".boundary");
    } else {
        throw SchemaError(where + ".kind \"" + kind + "\" is not a generator kind");
    }
    return spec;
}

Json spec_to_json(const GeneratorSpec& spec) {
    Json j;
    switch (spec.kind) {
        case GenKind::Affine: {
            j["kind"] = "affine";
            Json coeffs = Json::array();
            for (const Rational& c : spec.affine_coeffs) coeffs.push_back(rational_str(c));
            j["coeffs"] = std::move(coeffs);
            j["constant"] = rational_str(spec.affine_constant);
            break;
        }
        case GenKind::Tabulated: {
            j["kind"] = "tabulated";
            Json values = Json::object();
            for (const auto& [id, v] : spec.tabulated) values[id] = rational_str(v);
            j["values"] = std::move(values);
            break;
        }
        case GenKind::Harmonic2D:
            j["kind"] = "harmonic2d";
            j["m"] = spec.harm_m;
            j["part"] = spec.harm_re ? "re" : "im";
            break;
        case GenKind::GridHarmonic:
            j["kind"] = "grid_harmonic";
            j["boundary"] = spec.grid_boundary;
            break;
    }
    return j;
}

Json measure_to_json(const DiscreteMeasure& m, const GroundSet& ground) {
    Json j = Json::object();
    for (std::size_t i : m.support()) j[ground.point(i).id] = rational_str(m.mass(i));
    return j;
}

Json points_to_json(const GroundSet& ground) {
    Json arr = Json::array();
    for (const GroundPoint& p : ground.points()) {
        Json jp;
        jp["id"] = p.id;
        Json coords = Json::array();
        for (const Rational& c : p.coords) coords.push_back(rational_str(c));
        jp["coords"] = std::move(coords);
        arr.push_back(std::move(jp));
    }
    return arr;
}

Json id_list(const std::vector<std::size_t>& indices, const GroundSet& ground) {
    Json arr = Json::array();
    for (std::size_t i : indices) arr.push_back(ground.point(i).id);
    return arr;
}

Json classes_to_json(const Paving& paving, const GroundSet& ground) {
    Json arr = Json::array();
    for (const PavingClass& cls : paving.classes) {
        Json jc;
        jc["atoms"] = id_list(cls.atoms, ground);
        Json comp;
        Json verts = Json::array();
        for (const Vec& v : cls.component.vertices) {
            Json row = Json::array();
            for (const Rational& x : v) row.push_back(rational_str(x));
            verts.push_back(std::move(row));
        }
        comp["vertices"] = std::move(verts);
        comp["affine_dim"] = cls.component.affine_dim;
        jc["component"] = std::move(comp);
        Json sup = Json::object();
        for (const auto& [atom, targets] : cls.supports) {
            sup[ground.point(atom).id] = id_list(targets, ground);
        }
        jc["support"] = std::move(sup);
        arr.push_back(std::move(jc));
    }
    return arr;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Instance instance_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("instance must be a JSON object");
    GroundSet ground = ground_from_json(j);

    DiscreteMeasure mu(ground, mass_map(field(j, "mu"), "mu"));
    DiscreteMeasure nu(ground, mass_map(field(j, "nu"), "nu"));

    const Json& jgens = field(j, "generators");
    if (!jgens.is_array()) throw SchemaError("generators must be an array");
    std::vector<GeneratorSpec> specs;
    specs.reserve(jgens.size());
    for (std::size_t k = 0; k < jgens.size(); ++k) specs.push_back(spec_from_json(jgens[k], k));
    GeneratorSet gens = build_generator_set(ground, specs);

    Weight weight = Weight::One;
    if (j.contains("weight")) {
        std::string w = string_field(j["weight"], "weight");
        if (w == "one") {
            weight = Weight::One;
        } else if (w == "one_plus_maxnorm") {
            weight = Weight::OnePlusMaxnorm;
        } else {
            throw SchemaError("weight must be \"one\" or \"one_plus_maxnorm\"");
        }
    }
    return Instance{std::move(ground), std::move(mu), std::move(nu), std::move(gens), weight};
}

Json instance_to_json(const Instance& inst) {
    Json j;
    j["dimension"] = inst.ground.dimension();
    j["points"] = points_to_json(inst.ground);
    j["mu"] = measure_to_json(inst.mu, inst.ground);
    j["nu"] = measure_to_json(inst.nu, inst.ground);
    Json gens = Json::array();
    for (const Generator& g : inst.gens.generators()) gens.push_back(spec_to_json(g.spec));
    j["generators"] = std::move(gens);
    j["weight"] = inst.weight == Weight::One ? "one" : "one_plus_maxnorm";
    return j;
}

MetricInstance metric_instance_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("metric instance must be a JSON object");
    GroundSet ground = ground_from_json(j);
    DiscreteMeasure mu(ground, mass_map(field(j, "mu"), "mu"));
    DiscreteMeasure nu(ground, mass_map(field(j, "nu"), "nu"));

    const Json& jm = field(j, "metric");
    Mat metric;
    if (jm.is_string()) {
        std::string kind = jm.get<std::string>();
        if (kind == "euclidean") {
            metric = euclidean_metric(ground);
        } else if (kind == "l1") {
            metric = l1_metric(ground);
        } else {
            throw SchemaError("metric must be \"euclidean\", \"l1\", or an explicit matrix");
        }
    } else if (jm.is_array()) {
        for (const Json& row : jm) metric.push_back(vec_field(row, "metric row"));
    } else {
        throw SchemaError("metric must be \"euclidean\", \"l1\", or an explicit matrix");
    }
    return MetricInstance(std::move(ground), std::move(metric), std::move(mu), std::move(nu));
}

Json metric_instance_to_json(const MetricInstance& inst) {
    Json j;
    j["dimension"] = inst.ground.dimension();
    j["points"] = points_to_json(inst.ground);
    j["mu"] = measure_to_json(inst.mu, inst.ground);
    j["nu"] = measure_to_json(inst.nu, inst.ground);
    Json metric = Json::array();
    for (const Vec& row : inst.metric) {
        Json jrow = Json::array();
        for (const Rational& d : row) jrow.push_back(rational_str(d));
        metric.push_back(std::move(jrow));
    }
    j["metric"] = std::move(metric);
    return j;
}

PairSet pairs_from_json(const Json& j, const GroundSet& ground) {
    if (!j.is_object()) throw SchemaError("pair set must be a JSON object");
    const Json& jpairs = field(j, "pairs");
    if (!jpairs.is_array()) throw SchemaError("pairs must be an array");
    PairSet u;
    for (const Json& p : jpairs) {
        if (!p.is_array() || p.size() != 2) {
            throw SchemaError("each pair must be a two-element array [from, to]");
        }
        u.pairs.emplace_back(ground.index_of(string_field(p[0], "pair from")),
                             ground.index_of(string_field(p[1], "pair to")));
    }
    return u;
}

Json pairs_to_json(const PairSet& u, const GroundSet& ground) {
    Json j;
    Json arr = Json::array();
    for (const auto& [from, to] : u.pairs) {
        arr.push_back(Json::array({ground.point(from).id, ground.point(to).id}));
    }
    j["pairs"] = std::move(arr);
    return j;
}

std::vector<std::vector<std::size_t>> subsets_from_json(const Json& j, std::size_t gen_count) {
    if (!j.is_array()) throw SchemaError("subsets must be an array of index arrays");
    std::vector<std::vector<std::size_t>> out;
    for (const Json& row : j) {
        if (!row.is_array()) throw SchemaError("each subset must be an array of indices");
        std::vector<std::size_t> z;
        for (const Json& e : row) {
            std::size_t idx = index_field(e, "subset entry");
            if (idx >= gen_count) {
                throw SchemaError("generator index " + std::to_string(idx) + " out of range");
            }
            z.push_back(idx);
        }
        out.push_back(std::move(z));
    }
    return out;
}

Json subsets_to_json(const std::vector<std::vector<std::size_t>>& subsets) {
    Json arr = Json::array();
    for (const auto& z : subsets) {
        Json row = Json::array();
        for (std::size_t idx : z) row.push_back(idx);
        arr.push_back(std::move(row));
    }
    return arr;
}

Json plan_to_json(const TransportPlan& plan, const GroundSet& ground) {
    Json j;
    j["delta"] = rational_str(plan.delta);
    Json entries = Json::array();
    for (std::size_t r = 0; r < plan.from.size(); ++r) {
        for (std::size_t c = 0; c < plan.to.size(); ++c) {
            if (plan.pi[r][c] == 0) continue;
            Json e;
            e["from"] = ground.point(plan.from[r]).id;
            e["to"] = ground.point(plan.to[c]).id;
            e["mass"] = rational_str(plan.pi[r][c]);
            entries.push_back(std::move(e));
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

Json order_report_json(const Instance& inst, const Rational& delta, const OrderVerdict& verdict) {
    Json j;
    j["delta"] = rational_str(delta);
    j["in_order"] = verdict.in_order;
    if (verdict.in_order) {
        j["plan"] = plan_to_json(verdict.witness, inst.ground);
        return j;
    }
    Json cert = Json::array();
    for (const Rational& c : verdict.certificate) cert.push_back(rational_str(c));
    j["certificate"] = std::move(cert);
    SeparatingFunction sep;
    bool ok = verify_order_certificate(inst, delta, verdict.certificate, &sep);
    j["certificate_verified"] = ok;
    if (ok && delta == 0) {
        Json js;
        js["atoms"] = id_list(sep.atoms, inst.ground);
        Json alpha = Json::array();
        for (const Rational& a : sep.alpha) alpha.push_back(rational_str(a));
        js["alpha"] = std::move(alpha);
        Json gamma = Json::array();
        for (const Vec& row : sep.gamma) {
            Json jrow = Json::array();
            for (const Rational& g : row) jrow.push_back(rational_str(g));
            gamma.push_back(std::move(jrow));
        }
        js["gamma"] = std::move(gamma);
        Json values = Json::object();
        for (std::size_t i = 0; i < inst.ground.size(); ++i) {
            values[inst.ground.point(i).id] = rational_str(sep.values[i]);
        }
        js["values"] = std::move(values);
        js["mu_integral"] = rational_str(sep.mu_integral);
        js["nu_integral"] = rational_str(sep.nu_integral);
        j["separating"] = std::move(js);
    }
    return j;
}

Json support_report_json(const Instance& inst, const Rational& delta, const SupportResult& res) {
    Json j;
    j["delta"] = rational_str(delta);
    j["plan"] = plan_to_json(res.plan, inst.ground);
    Json rows = Json::array();
    for (std::size_t r = 0; r < res.plan.from.size(); ++r) {
        Json row;
        row["from"] = inst.ground.point(res.plan.from[r]).id;
        Json to = Json::array();
        for (std::size_t c = 0; c < res.plan.to.size(); ++c) {
            if (res.support[r][c]) to.push_back(inst.ground.point(res.plan.to[c]).id);
        }
        row["to"] = std::move(to);
        rows.push_back(std::move(row));
    }
    j["support"] = std::move(rows);
    return j;
}

Json paving_report_json(const Instance& inst, const Paving& paving,
                        const BMembershipReport& membership) {
    Json j;
    j["delta"] = rational_str(paving.delta);
    j["basis"] = inst.gens.basis_labels();
    j["classes"] = classes_to_json(paving, inst.ground);
    Json checks;
    checks["dichotomy"] = true;  // build_paving would have thrown otherwise
    Json bm = Json::array();
    for (std::size_t k = 0; k < membership.atoms.size(); ++k) {
        Json e;
        e["atom"] = inst.ground.point(membership.atoms[k]).id;
        e["pass"] = static_cast<bool>(membership.pass[k]);
        bm.push_back(std::move(e));
    }
    checks["b_membership"] = std::move(bm);
    checks["lineality_trivial"] = membership.lineality_trivial;
    checks["fully_lineal"] = membership.fully_lineal;
    j["checks"] = std::move(checks);
    return j;
}

Json apirc_report_json(const Instance& inst, const ApircPaving& ap) {
    Json j;
    j["subsets"] = subsets_to_json(ap.subsets);
    Json pavings = Json::array();
    for (std::size_t k = 0; k < ap.pavings.size(); ++k) {
        Json jp;
        jp["subset"] = subsets_to_json({ap.subsets[k]})[0];
        jp["basis"] = ap.sub_gens[k].basis_labels();
        jp["classes"] = classes_to_json(ap.pavings[k], inst.ground);
        pavings.push_back(std::move(jp));
    }
    j["pavings"] = std::move(pavings);
    Json joint = Json::array();
    for (const auto& cls : ap.joint_classes) joint.push_back(id_list(cls, inst.ground));
    j["joint_classes"] = std::move(joint);
    j["supp_inclusion"] = ap.supp_inclusion;
    return j;
}

Json polar_report_json(const Instance& inst, const PairSet& u, const PolarReport& rep) {
    Json j;
    j["delta"] = rational_str(rep.delta);
    j["pairs"] = pairs_to_json(u, inst.ground)["pairs"];
    j["max_mass"] = rational_str(rep.max_mass);
    j["polar"] = rep.polar;
    j["plain_max"] = rational_str(rep.plain_max);
    j["plain_polar"] = rep.plain_polar;
    j["trivially_polar"] = rep.trivial;
    j["section_checked"] = rep.section_checked;
    j["equivalence_holds"] = rep.equivalence_holds;
    return j;
}

Json rays_report_json(const MetricInstance& inst, const DualSolution& dual,
                      const PrimalSolution& primal, const RayDecomposition& rays,
                      const BalanceReport& balance) {
    Json j;
    j["wasserstein"] = rational_str(dual.value);
    Json pot = Json::object();
    for (std::size_t i = 0; i < inst.ground.size(); ++i) {
        pot[inst.ground.point(i).id] = rational_str(dual.potential.values[i]);
    }
    j["potential"] = std::move(pot);
    j["plan"] = plan_to_json(primal.plan, inst.ground);
    Json jr = Json::array();
    for (const auto& ray : rays.rays) jr.push_back(id_list(ray, inst.ground));
    j["rays"] = std::move(jr);
    j["branch_points"] = id_list(rays.branch_points, inst.ground);
    Json jb;
    jb["applicable"] = balance.applicable;
    jb["balanced"] = balance.balanced;
    Json diffs = Json::array();
    for (const Rational& d : balance.differences) diffs.push_back(rational_str(d));
    jb["differences"] = std::move(diffs);
    j["balance"] = std::move(jb);
    return j;
}

std::string plan_to_csv(const TransportPlan& plan, const GroundSet& ground) {
    std::string out = "from,to,mass\n";
    for (std::size_t r = 0; r < plan.from.size(); ++r) {
        for (std::size_t c = 0; c < plan.to.size(); ++c) {
            if (plan.pi[r][c] == 0) continue;
            out += csv_field(ground.point(plan.from[r]).id) + "," +
                   csv_field(ground.point(plan.to[c]).id) + "," +
                   csv_field(rational_str(plan.pi[r][c])) + "\n";
        }
    }
    return out;
}

std::string paving_to_csv(const Paving& paving, const GroundSet& ground) {
    std::string out = "class,atom,target\n";
    for (std::size_t k = 0; k < paving.classes.size(); ++k) {
        for (const auto& [atom, targets] : paving.classes[k].supports) {
            for (std::size_t t : targets) {
                out += std::to_string(k) + "," + csv_field(ground.point(atom).id) + "," +
                       csv_field(ground.point(t).id) + "\n";
            }
        }
    }
    return out;
}

std::string rays_to_csv(const RayDecomposition& rays, const GroundSet& ground) {
    std::string out = "ray,point\n";
    for (std::size_t k = 0; k < rays.rays.size(); ++k) {
        for (std::size_t p : rays.rays[k]) {
            out += std::to_string(k) + "," + csv_field(ground.point(p).id) + "\n";
        }
    }
    return out;
}

}  // namespace fcone
