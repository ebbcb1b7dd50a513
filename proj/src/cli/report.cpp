#include "pvscore/cli/report.hpp"

#include <stdexcept>

namespace pvscore::cli {

json to_json(const RunReport& report) {
  json j;
  j["command"] = report.command;
  j["parameters"] = report.parameters;
  j["results"] = report.results;
  j["seed"] = report.seed ? json(*report.seed) : json(nullptr);
  j["wall_clock_seconds"] = report.wall_clock_seconds;
  return j;
}

RunReport run_report_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("run report must be a JSON object");
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.parameters = j.at("parameters");
  r.results = j.at("results");
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  return r;
}

json to_json(const PvEstimate& est, bool with_witness) {
  json j{{"value", est.value},
         {"s_w", est.s_w},
         {"s_v", est.s_v},
         {"s_w_over_n", static_cast<double>(est.s_w) / static_cast<double>(est.n)},
         {"s_v_over_m", static_cast<double>(est.s_v) / static_cast<double>(est.m)},
         {"n", est.n},
         {"m", est.m},
         {"epsilon", est.epsilon},
         {"metric", metric_name(est.metric)}};
  if (with_witness) {
    j["unmatched_left"] = est.unmatched_left;
    j["unmatched_right"] = est.unmatched_right;
    json pairs = json::array();
    for (const auto& [i, k] : est.matched_pairs) pairs.push_back({i, k});
    j["matched_pairs"] = pairs;
  }
  return j;
}

json to_json(const BoundParams& p) {
  return json{{"epsilon", p.epsilon},
              {"dim", p.dim},
              {"n_min", p.n_min},
              {"delta_or_alpha", p.delta_or_alpha},
              {"cover_cardinality", p.cover_cardinality}};
}

json to_json(const TestReport& r) {
  json j{{"kind", test_kind_name(r.kind)},
         {"method", test_method_name(r.method)},
         {"statistic", r.statistic},
         {"threshold", r.threshold},
         {"theta", r.theta},
         {"alpha", r.alpha},
         {"reject", r.reject},
         {"vacuous", r.vacuous},
         {"metric", metric_name(r.metric)},
         {"n", r.n},
         {"m", r.m},
         {"params", to_json(r.params)}};
  if (r.ci_lower) j["ci_lower"] = *r.ci_lower;
  if (r.ci_upper) j["ci_upper"] = *r.ci_upper;
  if (!r.per_projection.empty()) j["per_projection"] = r.per_projection;
  return j;
}

json to_json(const CiResult& ci) {
  return json{{"lower", ci.lower},
              {"upper", ci.upper},
              {"level", ci.level},
              {"replicates", ci.replicate_count},
              {"z0", ci.z0},
              {"acceleration", ci.acceleration},
              {"degenerate", ci.degenerate}};
}

json to_json(const RankingReport& report, const std::vector<std::string>& query_ids) {
  json per_query = json::array();
  for (std::size_t i = 0; i < report.per_query_ap.size(); ++i) {
    per_query.push_back({{"query", query_ids.at(i)}, {"ap", report.per_query_ap[i]}});
  }
  json curve = json::array();
  for (const auto& p : report.pr_curve) curve.push_back({{"recall", p.recall}, {"precision", p.precision}});
  return json{{"map", report.map}, {"per_query", per_query}, {"pr_curve", curve}};
}

json to_json(const PowerCell& c) {
  return json{{"epsilon", c.epsilon},   {"delta", c.delta}, {"n", c.n},
              {"rejections", c.rejections}, {"reps", c.reps}, {"frequency", c.frequency}};
}

json to_json(const SphereRegime& r) {
  json j{{"n_low_bound", r.n_low_bound}, {"n_high_bound", r.n_high_bound}, {"n_low", r.n_low}};
  j["n_high"] = r.n_high ? json(*r.n_high) : json(nullptr);
  j["empty"] = r.empty();
  return j;
}

}  // namespace pvscore::cli
