#include "pvscore/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pvscore/bootstrap.hpp"
#include "pvscore/cli/csv.hpp"
#include "pvscore/cli/report.hpp"
#include "pvscore/eval.hpp"
#include "pvscore/exact.hpp"
#include "pvscore/geometry.hpp"
#include "pvscore/inference.hpp"
#include "pvscore/matching.hpp"
#include "pvscore/projection.hpp"

namespace pvscore::cli {

namespace {

namespace fs = std::filesystem;

std::uint64_t parse_seed(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(what) + " is not an unsigned 64-bit integer: " +
                                std::string(text));
  }
  return value;
}

// Flag, then environment, then `fallback`.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    return parse_seed(env, kSeedEnvVar);
  }
  return fallback;
}

std::vector<double> parse_double_list(const std::string& text, std::string_view what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    const std::string_view cell(item.data() + first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw std::invalid_argument(std::string(what) + ": not a number: " + std::string(cell));
    }
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  return values;
}

void require_open_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0,1)");
  }
}

// Options shared by the two-sample subcommands.
struct PairOptions {
  std::string file1;
  std::string file2;
  double epsilon = 0.0;
  std::string metric = "linf";
};

void add_pair_options(CLI::App* sub, PairOptions& o) {
  sub->add_option("file1", o.file1, "CSV file of the first sample")->required();
  sub->add_option("file2", o.file2, "CSV file of the second sample")->required();
  sub->add_option("-e,--epsilon", o.epsilon, "Matching radius")->required();
  sub->add_option("-m,--metric", o.metric, "Ground distance: linf, l2 or l1");
}

std::pair<PointSet, PointSet> load_pair(const PairOptions& o) {
  PointSet s1 = read_csv(o.file1);
  PointSet s2 = read_csv(o.file2);
  if (s1.dim() != s2.dim()) {
    throw InputError("dimension mismatch: " + o.file1 + " has " + std::to_string(s1.dim()) +
                     " columns, " + o.file2 + " has " + std::to_string(s2.dim()));
  }
  return {std::move(s1), std::move(s2)};
}

json pair_parameters(const PairOptions& o, Metric metric) {
  return json{{"file1", o.file1},
              {"file2", o.file2},
              {"epsilon", o.epsilon},
              {"metric", metric_name(metric)}};
}

// Reads CSV point sets of a directory, keyed by file stem, in stem order.
std::vector<std::pair<std::string, PointSet>> read_directory(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.stem().string() < b.stem().string(); });
  if (files.empty()) throw InputError("no .csv files in " + dir);
  std::vector<std::pair<std::string, PointSet>> out;
  for (const auto& f : files) out.emplace_back(f.stem().string(), read_csv(f));
  return out;
}

// Relevance rows are "query,candidate" id pairs. Lines starting with '#' and
// a leading "query,candidate" header are ignored.
std::vector<std::vector<bool>> read_relevance(const std::string& path,
                                              const std::vector<std::string>& query_ids,
                                              const std::vector<std::string>& candidate_ids) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::map<std::string, std::size_t> qpos;
  std::map<std::string, std::size_t> cpos;
  for (std::size_t i = 0; i < query_ids.size(); ++i) qpos[query_ids[i]] = i;
  for (std::size_t j = 0; j < candidate_ids.size(); ++j) cpos[candidate_ids[j]] = j;
  std::vector<std::vector<bool>> rel(query_ids.size(), std::vector<bool>(candidate_ids.size()));

  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected query,candidate");
    }
    const std::string q = trim(line.substr(0, comma));
    const std::string c = trim(line.substr(comma + 1));
    if (line_no == 1 && q == "query" && c == "candidate") continue;
    const auto qi = qpos.find(q);
    const auto ci = cpos.find(c);
    if (qi == qpos.end()) throw InputError(path + ":" + std::to_string(line_no) + ": unknown query " + q);
    if (ci == cpos.end()) {
      throw InputError(path + ":" + std::to_string(line_no) + ": unknown candidate " + c);
    }
    rel[qi->second][ci->second] = true;
  }
  return rel;
}

// Splits a weighted CSV (last column = mass) into a distribution.
DiscreteDist weighted_dist(const PointSet& rows, const std::string& name) {
  if (rows.dim() < 2) throw InputError(name + ": weighted input needs a mass column");
  const std::size_t d = rows.dim() - 1;
  std::vector<double> coords;
  DiscreteDist dist;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = rows.row(i);
    coords.insert(coords.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d));
    dist.mass.push_back(r[d]);
  }
  dist.support = PointSet(std::move(coords), d);
  return dist;
}

PowerStudyConfig power_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("power-sim config must be a JSON object");
  static const std::vector<std::string> kKeys = {
      "epsilons", "delta_grid_size", "deltas", "alpha", "reps", "sample_sizes",
      "seed", "method", "bootstrap_replicates"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw std::invalid_argument("unknown power-sim config key: " + key);
    }
  }
  PowerStudyConfig cfg;
  try {
    if (j.contains("epsilons")) cfg.epsilons = j["epsilons"].get<std::vector<double>>();
    if (j.contains("delta_grid_size")) cfg.delta_grid_size = j["delta_grid_size"].get<std::size_t>();
    if (j.contains("deltas")) cfg.deltas = j["deltas"].get<std::vector<double>>();
    if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
    if (j.contains("reps")) cfg.reps = j["reps"].get<std::size_t>();
    if (j.contains("sample_sizes")) cfg.sample_sizes = j["sample_sizes"].get<std::vector<std::size_t>>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("bootstrap_replicates")) {
      cfg.bootstrap_replicates = j["bootstrap_replicates"].get<std::size_t>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("power-sim config: ") + e.what());
  }
  if (j.contains("method")) {
    if (!j["method"].is_string()) throw std::invalid_argument("power-sim config: method must be a string");
    const auto m = j["method"].get<std::string>();
    if (m == "bound") {
      cfg.method = TestMethod::Bound;
    } else if (m == "bca") {
      cfg.method = TestMethod::Bca;
    } else {
      throw std::invalid_argument("power-sim config: unknown method " + m);
    }
  }
  return cfg;
}

json power_config_to_json(const PowerStudyConfig& cfg) {
  return json{{"epsilons", cfg.epsilons},
              {"delta_grid_size", cfg.delta_grid_size},
              {"deltas", cfg.deltas},
              {"alpha", cfg.alpha},
              {"reps", cfg.reps},
              {"sample_sizes", cfg.sample_sizes},
              {"seed", cfg.seed},
              {"method", test_method_name(cfg.method)},
              {"bootstrap_replicates", cfg.bootstrap_replicates}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perturbed variation scores and two-sample tests", "pvscore"};
  app.require_subcommand(1);

  RunReport report;
  std::function<void()> action;

  // pv
  PairOptions pv_opt;
  bool pv_normalize = false;
  bool pv_witness = false;
  auto* pv = app.add_subcommand("pv", "Sampled PV score of two CSV samples");
  add_pair_options(pv, pv_opt);
  pv->add_flag("--normalize,!--no-normalize", pv_normalize,
               "Rescale both samples jointly to [0,1]^d first (default off)");
  pv->add_flag("--emit-witness", pv_witness, "Include matched pairs and unmatched indices");
  pv->callback([&] {
    action = [&] {
      const Metric metric = parse_metric(pv_opt.metric);
      auto [s1, s2] = load_pair(pv_opt);
      if (pv_normalize) std::tie(s1, s2) = normalize_unit_box(s1, s2);
      report.parameters = pair_parameters(pv_opt, metric);
      report.parameters["normalize"] = pv_normalize;
      report.parameters["emit_witness"] = pv_witness;
      report.results = to_json(pv_hat(s1, s2, pv_opt.epsilon, metric), pv_witness);
    };
  });

  // test
  PairOptions test_opt;
  double test_theta = 0.0;
  double test_alpha = 0.05;
  std::string test_mode = "similarity";
  std::string test_method = "bound";
  std::size_t test_b = kDefaultReplicates;
  std::optional<std::uint64_t> test_seed;
  bool test_normalize = true;
  auto* test = app.add_subcommand("test", "Similarity or equivalence test of two samples");
  add_pair_options(test, test_opt);
  test->add_option("--theta", test_theta, "Null hypothesis PV level");
  test->add_option("-a,--alpha", test_alpha, "Significance level");
  test->add_option("--mode", test_mode, "similarity or equivalence")
      ->check(CLI::IsMember({"similarity", "equivalence"}));
  test->add_option("--method", test_method, "bound or bca")->check(CLI::IsMember({"bound", "bca"}));
  test->add_option("-B,--B", test_b, "Bootstrap replicates (bca)");
  test->add_option("--seed", test_seed, "Random seed (bca)");
  test->add_flag("--normalize,!--no-normalize", test_normalize,
                 "Rescale both samples jointly to [0,1]^d first (default on)");
  test->callback([&] {
    action = [&] {
      const Metric metric = parse_metric(test_opt.metric);
      const bool bca = test_method == "bca";
      if (!bca && !test_normalize) {
        throw std::invalid_argument("the bound method is defined on normalized samples; drop --no-normalize");
      }
      if (bca && test_b == 0) throw std::invalid_argument("--B must be positive");
      require_open_unit(test_alpha, "alpha");
      const std::uint64_t seed = resolve_seed(test_seed, 0);
      auto [s1, s2] = load_pair(test_opt);
      report.parameters = pair_parameters(test_opt, metric);
      report.parameters["theta"] = test_theta;
      report.parameters["alpha"] = test_alpha;
      report.parameters["mode"] = test_mode;
      report.parameters["method"] = test_method;
      report.parameters["normalize"] = test_normalize;
      const bool similarity = test_mode == "similarity";
      if (!bca) {
        report.results = to_json(similarity
                                     ? similarity_test(s1, s2, test_opt.epsilon, test_theta, test_alpha, metric)
                                     : equivalence_test(s1, s2, test_opt.epsilon, test_theta, test_alpha, metric));
        return;
      }
      if (test_b < kMinRecommendedReplicates) {
        err << "warning: " << test_b << " bootstrap replicates is below the recommended "
            << kMinRecommendedReplicates << "\n";
      }
      report.parameters["B"] = test_b;
      report.seed = seed;
      if (test_normalize) std::tie(s1, s2) = normalize_unit_box(s1, s2);
      report.results = to_json(
          similarity ? ci_similarity_test(s1, s2, test_opt.epsilon, test_theta, test_alpha, test_b, seed, metric)
                     : ci_equivalence_test(s1, s2, test_opt.epsilon, test_theta, test_alpha, test_b, seed,
                                           metric));
    };
  });

  // ppv
  PairOptions ppv_opt;
  std::size_t ppv_k = 10;
  double ppv_alpha = 0.05;
  std::optional<std::uint64_t> ppv_seed;
  bool ppv_normalize = true;
  auto* ppv = app.add_subcommand("ppv", "Projected PV test of H0: PV = 0");
  add_pair_options(ppv, ppv_opt);
  ppv->add_option("-K,--K", ppv_k, "Number of random projections");
  ppv->add_option("-a,--alpha", ppv_alpha, "Significance level");
  ppv->add_option("--seed", ppv_seed, "Seed of the projection directions");
  ppv->add_flag("--normalize,!--no-normalize", ppv_normalize,
                "Rescale both samples jointly to [0,1]^d first (default on)");
  ppv->callback([&] {
    action = [&] {
      const Metric metric = parse_metric(ppv_opt.metric);
      if (ppv_k == 0) throw std::invalid_argument("--K must be positive");
      require_open_unit(ppv_alpha, "alpha");
      require_open_unit(ppv_opt.epsilon, "epsilon");
      const std::uint64_t seed = resolve_seed(ppv_seed, 0);
      auto [s1, s2] = load_pair(ppv_opt);
      if (ppv_normalize) std::tie(s1, s2) = normalize_unit_box(s1, s2);
      report.parameters = pair_parameters(ppv_opt, metric);
      report.parameters["K"] = ppv_k;
      report.parameters["alpha"] = ppv_alpha;
      report.parameters["normalize"] = ppv_normalize;
      report.seed = seed;
      report.results = to_json(ppv_similarity_test(s1, s2, ppv_opt.epsilon, ppv_k, ppv_alpha, seed));
    };
  });

  // exact
  PairOptions exact_opt;
  bool exact_weighted = false;
  auto* exact = app.add_subcommand("exact", "Exact PV of two discrete distributions");
  add_pair_options(exact, exact_opt);
  exact->add_flag("--weighted", exact_weighted,
                  "Last column holds the point mass (default: uniform mass per row)");
  exact->callback([&] {
    action = [&] {
      const Metric metric = parse_metric(exact_opt.metric);
      const PointSet r1 = read_csv(exact_opt.file1);
      const PointSet r2 = read_csv(exact_opt.file2);
      DiscreteDist mu1 = exact_weighted ? weighted_dist(r1, exact_opt.file1) : DiscreteDist::uniform(r1);
      DiscreteDist mu2 = exact_weighted ? weighted_dist(r2, exact_opt.file2) : DiscreteDist::uniform(r2);
      if (mu1.support.dim() != mu2.support.dim()) throw InputError("dimension mismatch");
      try {
        mu1.validate();
        mu2.validate();
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const DiscretePvResult res = pv_discrete(mu1, mu2, exact_opt.epsilon, metric);
      report.parameters = pair_parameters(exact_opt, metric);
      report.parameters["weighted"] = exact_weighted;
      json flows = json::array();
      for (const auto& [ij, f] : res.plan.flow) flows.push_back({{"i", ij.first}, {"j", ij.second}, {"mass", f}});
      report.results = json{{"value", res.value},
                            {"plan",
                             {{"flow", flows},
                              {"leftover_left", res.plan.leftover_left},
                              {"leftover_right", res.plan.leftover_right},
                              {"objective", res.plan.objective}}}};
    };
  });

  // rank
  std::string rank_qdir;
  std::string rank_cdir;
  std::string rank_rel;
  std::optional<double> rank_eps;
  std::string rank_grid;
  std::string rank_metric = "l2";
  auto* rank = app.add_subcommand("rank", "Rank candidates per query by PV and report MAP");
  rank->add_option("query_dir", rank_qdir, "Directory of query CSV files")->required();
  rank->add_option("candidate_dir", rank_cdir, "Directory of candidate CSV files")->required();
  rank->add_option("relevance_file", rank_rel, "query,candidate pairs that are relevant")->required();
  auto* eps_opt = rank->add_option("-e,--epsilon", rank_eps, "Matching radius");
  auto* grid_opt = rank->add_option("--cv-grid", rank_grid, "Comma-separated radii to cross-validate");
  eps_opt->excludes(grid_opt);
  rank->add_option("-m,--metric", rank_metric, "Ground distance: linf, l2 or l1");
  rank->callback([&] {
    action = [&] {
      const Metric metric = parse_metric(rank_metric);
      if (!rank_eps && rank_grid.empty()) throw std::invalid_argument("one of --epsilon or --cv-grid is required");
      std::vector<double> grid;
      if (rank_eps) {
        if (!(*rank_eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
      } else {
        grid = parse_double_list(rank_grid, "--cv-grid");
        for (double g : grid) {
          if (!(g > 0.0)) throw std::invalid_argument("--cv-grid values must be positive");
        }
      }
      RankingCorpus corpus;
      for (auto& [id, ps] : read_directory(rank_qdir)) {
        corpus.query_ids.push_back(id);
        corpus.queries.push_back(std::move(ps));
      }
      for (auto& [id, ps] : read_directory(rank_cdir)) {
        corpus.candidate_ids.push_back(id);
        corpus.candidates.push_back(std::move(ps));
      }
      corpus.relevance = read_relevance(rank_rel, corpus.query_ids, corpus.candidate_ids);
      const std::size_t d = corpus.queries.front().dim();
      for (const auto* list : {&corpus.queries, &corpus.candidates}) {
        for (const auto& ps : *list) {
          if (ps.dim() != d) throw InputError("all query and candidate files must have the same column count");
        }
      }
      for (std::size_t q = 0; q < corpus.query_ids.size(); ++q) {
        if (std::none_of(corpus.relevance[q].begin(), corpus.relevance[q].end(), [](bool b) { return b; })) {
          throw InputError("query " + corpus.query_ids[q] + " has no relevant candidate");
        }
      }
      report.parameters = json{{"query_dir", rank_qdir},
                               {"candidate_dir", rank_cdir},
                               {"relevance_file", rank_rel},
                               {"metric", metric_name(metric)}};
      double epsilon = 0.0;
      json cv = nullptr;
      if (rank_eps) {
        epsilon = *rank_eps;
        report.parameters["epsilon"] = epsilon;
      } else {
        report.parameters["cv_grid"] = grid;
        const CrossValidationResult r = cross_validate_epsilon(corpus, grid, metric);
        epsilon = r.chosen_epsilon;
        cv = json{{"grid", r.grid},
                  {"map_by_epsilon", r.map_by_epsilon},
                  {"fold_epsilon", r.fold_epsilon},
                  {"nested_map", r.nested_map},
                  {"chosen_epsilon", r.chosen_epsilon}};
      }
      const RankingTask task = score_corpus(corpus, epsilon, metric);
      report.results = to_json(mean_average_precision(task), corpus.query_ids);
      report.results["epsilon"] = epsilon;
      if (!cv.is_null()) report.results["cross_validation"] = cv;
    };
  });

  // power-sim
  std::string ps_config;
  std::string ps_eps;
  std::string ps_deltas;
  std::string ps_sizes;
  std::optional<std::size_t> ps_reps;
  std::optional<std::uint64_t> ps_seed;
  std::optional<std::string> ps_method;
  std::optional<double> ps_alpha;
  std::optional<std::size_t> ps_b;
  auto* ps = app.add_subcommand("power-sim", "Type-1 error and power of the uniform shift study");
  ps->add_option("-c,--config", ps_config, "JSON file with study settings");
  ps->add_option("--epsilons", ps_eps, "Comma-separated epsilon list");
  ps->add_option("--deltas", ps_deltas, "Comma-separated shifts used for every epsilon");
  ps->add_option("--sample-sizes", ps_sizes, "Comma-separated sample sizes");
  ps->add_option("--reps", ps_reps, "Replications per cell");
  ps->add_option("--seed", ps_seed, "Study seed");
  ps->add_option("--method", ps_method, "bound or bca")->check(CLI::IsMember({"bound", "bca"}));
  ps->add_option("-a,--alpha", ps_alpha, "Significance level");
  ps->add_option("-B,--B", ps_b, "Bootstrap replicates (bca)");
  ps->callback([&] {
    action = [&] {
      json cfg_json = json::object();
      if (!ps_config.empty()) {
        std::ifstream in(ps_config);
        if (!in) throw InputError("cannot open " + ps_config);
        try {
          cfg_json = json::parse(in);
        } catch (const json::parse_error& e) {
          throw InputError(ps_config + ": " + e.what());
        }
      }
      PowerStudyConfig cfg = power_config_from_json(cfg_json);
      if (!cfg_json.contains("seed")) cfg.seed = resolve_seed(std::nullopt, cfg.seed);
      if (ps_seed) cfg.seed = *ps_seed;
      if (!ps_eps.empty()) cfg.epsilons = parse_double_list(ps_eps, "--epsilons");
      if (!ps_deltas.empty()) cfg.deltas = parse_double_list(ps_deltas, "--deltas");
      if (!ps_sizes.empty()) {
        cfg.sample_sizes.clear();
        for (double v : parse_double_list(ps_sizes, "--sample-sizes")) {
          if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw std::invalid_argument("--sample-sizes must be positive integers");
          }
          cfg.sample_sizes.push_back(static_cast<std::size_t>(v));
        }
      }
      if (ps_reps) cfg.reps = *ps_reps;
      if (ps_method) cfg.method = *ps_method == "bca" ? TestMethod::Bca : TestMethod::Bound;
      if (ps_alpha) cfg.alpha = *ps_alpha;
      if (ps_b) cfg.bootstrap_replicates = *ps_b;
      cfg.validate();
      if (cfg.method == TestMethod::Bca && cfg.bootstrap_replicates < kMinRecommendedReplicates) {
        err << "warning: " << cfg.bootstrap_replicates << " bootstrap replicates is below the recommended "
            << kMinRecommendedReplicates << "\n";
      }
      report.parameters = power_config_to_json(cfg);
      report.seed = cfg.seed;
      json cells = json::array();
      for (const PowerCell& c : run_power_study(cfg)) cells.push_back(to_json(c));
      report.results = json{{"cells", cells}};
    };
  });

  // sample-size
  double ss_theta0 = 0.0;
  double ss_eps = 0.0;
  std::size_t ss_dim = 1;
  double ss_alpha = 0.05;
  double ss_beta = 0.05;
  auto* ss = app.add_subcommand("sample-size", "Samples per side for a target power at theta0");
  ss->add_option("--theta0", ss_theta0, "Alternative PV level to detect")->required();
  ss->add_option("-e,--epsilon", ss_eps, "Matching radius")->required();
  ss->add_option("-d,--dim", ss_dim, "Dimension")->required();
  ss->add_option("-a,--alpha", ss_alpha, "Type-1 error");
  ss->add_option("-b,--beta", ss_beta, "Type-2 error");
  ss->callback([&] {
    action = [&] {
      report.parameters = json{{"theta0", ss_theta0}, {"epsilon", ss_eps}, {"dim", ss_dim},
                               {"alpha", ss_alpha},   {"beta", ss_beta}};
      const double bound = required_sample_size_bound(ss_theta0, ss_eps, ss_dim, ss_alpha, ss_beta);
      json n = nullptr;
      try {
        n = required_sample_size(ss_theta0, ss_eps, ss_dim, ss_alpha, ss_beta);
      } catch (const std::overflow_error&) {
        err << "warning: required sample size exceeds 64-bit range\n";
      }
      report.results = json{{"n", n},
                            {"bound", bound},
                            {"cover_cardinality", cover_cardinality(ss_eps, ss_dim)}};
    };
  });

  // regime
  double rg_delta = 0.05;
  double rg_eta = 0.0;
  double rg_eps = 0.0;
  std::size_t rg_dim = 1;
  auto* rg = app.add_subcommand("regime", "Sample sizes where sphere samples look dissimilar");
  rg->add_option("--delta", rg_delta, "Failure probability");
  rg->add_option("--eta", rg_eta, "Deviation level")->required();
  rg->add_option("-e,--epsilon", rg_eps, "Matching radius")->required();
  rg->add_option("-d,--dim", rg_dim, "Dimension")->required();
  rg->callback([&] {
    action = [&] {
      report.parameters = json{{"delta", rg_delta}, {"eta", rg_eta}, {"epsilon", rg_eps}, {"dim", rg_dim}};
      report.results = to_json(sphere_regime(rg_delta, rg_eta, rg_eps, rg_dim));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParameterError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    report.command = app.get_subcommands().front()->get_name();
    action();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const std::out_of_range& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << to_json(report).dump(2) << "\n";
  return kExitOk;
}

}  // namespace pvscore::cli
