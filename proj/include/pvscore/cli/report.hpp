#ifndef PVSCORE_CLI_REPORT_HPP
#define PVSCORE_CLI_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pvscore/bootstrap.hpp"
#include "pvscore/eval.hpp"
#include "pvscore/inference.hpp"
#include "pvscore/matching.hpp"
#include "pvscore/projection.hpp"

namespace pvscore::cli {

using nlohmann::json;

/// One run of a subcommand: what was asked, what came out.
struct RunReport {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  std::optional<std::uint64_t> seed;
  double wall_clock_seconds = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

json to_json(const RunReport& report);
RunReport run_report_from_json(const json& j);

json to_json(const PvEstimate& est, bool with_witness);
json to_json(const TestReport& report);
json to_json(const BoundParams& params);
json to_json(const CiResult& ci);
json to_json(const RankingReport& report, const std::vector<std::string>& query_ids);
json to_json(const PowerCell& cell);
json to_json(const SphereRegime& regime);

}  // namespace pvscore::cli

#endif  // PVSCORE_CLI_REPORT_HPP
