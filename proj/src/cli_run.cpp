#include "fcone/cli.hpp"

#include <utility>

#include "fcone/errors.hpp"
#include "fcone/scenarios.hpp"
#include "fcone/svg.hpp"

namespace fcone {

namespace {

void add(RunResult& res, std::string name, std::string bytes) {
    res.artifacts.emplace_back(std::move(name), std::move(bytes));
}

RunResult scenario_command(const RunConfig& cfg) {
    RunResult res;
    if (cfg.scenario == "grid_single" || cfg.scenario == "grid_two_domains") {
        GridScenario sc = cfg.scenario == "grid_single" ? grid_single() : grid_two_domains();
        add(res, "instance.json", dump_json(instance_to_json(sc.instance)));
        add(res, "subsets.json", dump_json(subsets_to_json(sc.nested_subsets)));
        return res;
    }
    Instance inst = gen_classic(cfg.scenario);  // UnknownScenario for bad names
    add(res, "instance.json", dump_json(instance_to_json(inst)));
    return res;
}

// negative order verdict: report with certificate, exit 2
RunResult not_in_order(const std::string& report_name, const Instance& inst,
                       const Rational& delta, const OrderVerdict& verdict) {
    RunResult res;
    res.exit_code = 2;
    add(res, report_name, dump_json(order_report_json(inst, delta, verdict)));
    return res;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    if (cfg.command == "scenario") return scenario_command(cfg);

    if (cfg.command == "rays") {
        Json doc = cfg.input;
        if (!cfg.metric.empty()) doc["metric"] = cfg.metric;
        MetricInstance mi = metric_instance_from_json(doc);
        DualSolution dual = kantorovich_potential(mi);
        PrimalSolution primal = w1_primal(mi);
        RayDecomposition rays = transport_rays(mi, dual.potential);
        BalanceReport balance = ray_mass_balance(mi, rays);
        RunResult res;
        if (cfg.emit_json) {
            add(res, "rays.json", dump_json(rays_report_json(mi, dual, primal, rays, balance)));
        }
        if (cfg.emit_csv) add(res, "rays.csv", rays_to_csv(rays, mi.ground));
        return res;
    }

    Instance inst = instance_from_json(cfg.input);
    if (!cfg.weight.empty()) {
        if (cfg.weight == "one")
            inst.weight = Weight::One;
        else if (cfg.weight == "one_plus_maxnorm")
            inst.weight = Weight::OnePlusMaxnorm;
        else
            throw SchemaError("weight must be one or one_plus_maxnorm");
    }

    if (cfg.command == "check-order") {
        OrderVerdict verdict = check_f_order(inst, cfg.delta);
        RunResult res;
        res.exit_code = verdict.in_order ? 0 : 2;
        add(res, "check-order.json", dump_json(order_report_json(inst, cfg.delta, verdict)));
        return res;
    }

    if (cfg.command == "transport" || cfg.command == "relaxed-support") {
        std::string report = cfg.command + ".json";
        OrderVerdict verdict = check_f_order(inst, cfg.delta);
        if (!verdict.in_order) return not_in_order(report, inst, cfg.delta, verdict);
        SupportResult sup = maximal_support_plan(inst, cfg.delta);
        Json j = support_report_json(inst, cfg.delta, sup);
        if (cfg.command == "relaxed-support") {
            bool full = true;
            for (const auto& row : sup.support) {
                for (bool b : row) full = full && b;
            }
            j["full_grid"] = full;
        }
        RunResult res;
        if (cfg.emit_json) add(res, report, dump_json(j));
        if (cfg.emit_csv) add(res, "plan.csv", plan_to_csv(sup.plan, inst.ground));
        return res;
    }

    if (cfg.command == "paving") {
        OrderVerdict verdict = check_f_order(inst, cfg.delta);
        if (!verdict.in_order) return not_in_order("paving.json", inst, cfg.delta, verdict);
        Paving paving = build_paving(inst, cfg.delta);
        BMembershipReport membership = check_b_membership(paving, inst);
        RunResult res;
        if (cfg.emit_json) {
            add(res, "paving.json", dump_json(paving_report_json(inst, paving, membership)));
        }
        if (cfg.emit_csv) add(res, "paving.csv", paving_to_csv(paving, inst.ground));
        if (cfg.emit_svg) add(res, "paving.svg", paving_svg(inst, paving));
        return res;
    }

    if (cfg.command == "apirc") {
        if (!cfg.subsets.is_array()) {
            throw SchemaError("apirc needs --subsets with an array of generator index lists");
        }
        OrderVerdict verdict = check_f_order(inst, 0);
        if (!verdict.in_order) return not_in_order("apirc.json", inst, 0, verdict);
        ApircPaving ap = build_apirc(inst, subsets_from_json(cfg.subsets, inst.gens.count()));
        RunResult res;
        add(res, "apirc.json", dump_json(apirc_report_json(inst, ap)));
        return res;
    }

    if (cfg.command == "polar") {
        if (!cfg.pairs.is_object()) {
            throw SchemaError("polar needs --pairs with a {\"pairs\": [...]} document");
        }
        PairSet u = pairs_from_json(cfg.pairs, inst.ground);
        RunResult res;
        try {
            PolarReport rep = check_polar_theorem(u, inst, cfg.delta);
            add(res, "polar.json", dump_json(polar_report_json(inst, u, rep)));
        } catch (const NotInOrderError&) {
            return not_in_order("polar.json", inst, cfg.delta, check_f_order(inst, cfg.delta));
        } catch (const SectionHypothesisViolated& e) {
            Json j;
            j["delta"] = rational_str(cfg.delta);
            j["pairs"] = pairs_to_json(u, inst.ground)["pairs"];
            j["section_hypothesis"] = "violated";
            j["message"] = e.what();
            add(res, "polar.json", dump_json(j));
            res.exit_code = 2;
        }
        return res;
    }

    throw SchemaError("unknown command \"" + cfg.command + "\"");
}

}  // namespace fcone
