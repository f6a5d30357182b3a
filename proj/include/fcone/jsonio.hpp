#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fcone/ground.hpp"
#include "fcone/order.hpp"
#include "fcone/paving.hpp"
#include "fcone/polar.hpp"
#include "fcone/raylocal.hpp"

namespace fcone {

// All serialization goes through ordered maps so a report dumps to the same
// bytes on every run. Rationals travel as canonical "p/q" strings; nothing
// numeric is ever written as a float.
using Json = nlohmann::ordered_json;

// file / text parsing; ParseError on malformed JSON
Json load_json(const std::string& path);
Json parse_json_text(const std::string& text);

// canonical text form: two-space indent plus trailing newline
std::string dump_json(const Json& j);

// { "dimension", "points", "mu", "nu", "generators", "weight" }
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

// adds "metric": explicit matrix, "euclidean", or "l1"; serialization always
// writes the matrix out
MetricInstance metric_instance_from_json(const Json& j);
Json metric_instance_to_json(const MetricInstance& inst);

// { "pairs": [["from","to"], ...] }
PairSet pairs_from_json(const Json& j, const GroundSet& ground);
Json pairs_to_json(const PairSet& u, const GroundSet& ground);

// [[0,2],[1]]: generator indices, validated against the generator count
std::vector<std::vector<std::size_t>> subsets_from_json(const Json& j, std::size_t gen_count);
Json subsets_to_json(const std::vector<std::vector<std::size_t>>& subsets);

Json plan_to_json(const TransportPlan& plan, const GroundSet& ground);

// report bodies for the CLI commands
Json order_report_json(const Instance& inst, const Rational& delta, const OrderVerdict& verdict);
Json support_report_json(const Instance& inst, const Rational& delta, const SupportResult& res);
Json paving_report_json(const Instance& inst, const Paving& paving,
                        const BMembershipReport& membership);
Json apirc_report_json(const Instance& inst, const ApircPaving& ap);
Json polar_report_json(const Instance& inst, const PairSet& u, const PolarReport& rep);
Json rays_report_json(const MetricInstance& inst, const DualSolution& dual,
                      const PrimalSolution& primal, const RayDecomposition& rays,
                      const BalanceReport& balance);

// flat comma-separated views of the bulky report parts
std::string plan_to_csv(const TransportPlan& plan, const GroundSet& ground);
std::string paving_to_csv(const Paving& paving, const GroundSet& ground);
std::string rays_to_csv(const RayDecomposition& rays, const GroundSet& ground);

}  // namespace fcone
