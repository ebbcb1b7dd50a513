#include "pvscore/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "pvscore/bootstrap.hpp"
#include "pvscore/matching.hpp"
#include "pvscore/random.hpp"

namespace pvscore {

double average_precision(std::span<const std::size_t> ranks, std::size_t relevant_count) {
  if (relevant_count == 0) throw std::invalid_argument("average_precision: no relevant items");
  if (ranks.size() != relevant_count) {
    throw std::invalid_argument("average_precision: expected one rank per relevant item");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const std::size_t position = i + 1;
    if (ranks[i] < position) {
      throw std::invalid_argument("average_precision: rank " + std::to_string(ranks[i]) +
                                  " is impossible for relevant item " + std::to_string(position));
    }
    if (i > 0 && ranks[i] <= ranks[i - 1]) {
      throw std::invalid_argument("average_precision: ranks must be strictly increasing");
    }
    sum += static_cast<double>(position) / static_cast<double>(ranks[i]);
  }
  return sum / static_cast<double>(relevant_count);
}

namespace {

void validate_task(const RankingTask& task) {
  const std::size_t q = task.query_ids.size(), c = task.candidate_ids.size();
  if (q == 0 || c == 0) throw std::invalid_argument("ranking task needs queries and candidates");
  if (task.relevance.size() != q || task.scores.size() != q) {
    throw std::invalid_argument("ranking task: relevance/scores must have one row per query");
  }
  for (std::size_t i = 0; i < q; ++i) {
    if (task.relevance[i].size() != c || task.scores[i].size() != c) {
      throw std::invalid_argument("ranking task: row length differs from candidate count");
    }
    if (std::none_of(task.relevance[i].begin(), task.relevance[i].end(), [](bool b) { return b; })) {
      throw std::invalid_argument("ranking task: query '" + task.query_ids[i] +
                                  "' has no relevant candidate");
    }
    for (double s : task.scores[i]) {
      if (!std::isfinite(s)) throw std::invalid_argument("ranking task: non-finite score");
    }
  }
}

// Per-query AP for every grid value: ap[g][q].
std::vector<std::vector<double>> ap_by_grid(const RankingCorpus& corpus,
                                            std::span<const double> grid, Metric metric) {
  std::vector<std::vector<double>> out;
  out.reserve(grid.size());
  for (double eps : grid) out.push_back(mean_average_precision(score_corpus(corpus, eps, metric)).per_query_ap);
  return out;
}

// Index of the largest value; the first one wins ties.
std::size_t argmax_first(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> rank_candidates(const RankingTask& task, std::size_t query) {
  const auto& scores = task.scores.at(query);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    if (task.candidate_ids[a] != task.candidate_ids[b]) {
      return task.candidate_ids[a] < task.candidate_ids[b];
    }
    return a < b;
  });
  return order;
}

RankingReport mean_average_precision(const RankingTask& task) {
  validate_task(task);
  const std::size_t q = task.query_ids.size(), c = task.candidate_ids.size();
  RankingReport report;
  report.pr_curve.assign(c, PrPoint{});
  for (std::size_t i = 0; i < q; ++i) {
    const auto order = rank_candidates(task, i);
    const auto& rel = task.relevance[i];
    const auto relevant = static_cast<std::size_t>(std::count(rel.begin(), rel.end(), true));
    std::vector<std::size_t> ranks;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < c; ++k) {
      if (rel[order[k]]) {
        ++hits;
        ranks.push_back(k + 1);
      }
      report.pr_curve[k].recall += static_cast<double>(hits) / static_cast<double>(relevant);
      report.pr_curve[k].precision += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
    report.per_query_ap.push_back(average_precision(ranks, relevant));
  }
  for (auto& p : report.pr_curve) {
    p.recall /= static_cast<double>(q);
    p.precision /= static_cast<double>(q);
  }
  report.map = std::accumulate(report.per_query_ap.begin(), report.per_query_ap.end(), 0.0) /
               static_cast<double>(q);
  return report;
}

RankingTask score_corpus(const RankingCorpus& corpus, double epsilon, Metric metric) {
  if (corpus.queries.size() != corpus.query_ids.size() ||
      corpus.candidates.size() != corpus.candidate_ids.size()) {
    throw std::invalid_argument("ranking corpus: ids and point sets differ in count");
  }
  RankingTask task{corpus.query_ids, corpus.candidate_ids, corpus.relevance, {}};
  task.scores.resize(corpus.queries.size());
  for (std::size_t i = 0; i < corpus.queries.size(); ++i) {
    for (const auto& cand : corpus.candidates) {
      task.scores[i].push_back(pv_hat(corpus.queries[i], cand, epsilon, metric).value);
    }
  }
  return task;
}

CrossValidationResult cross_validate_epsilon(const RankingCorpus& corpus,
                                             std::span<const double> grid, Metric metric) {
  if (grid.empty()) throw std::invalid_argument("cross-validation: empty epsilon grid");
  std::vector<double> sorted_grid(grid.begin(), grid.end());
  std::sort(sorted_grid.begin(), sorted_grid.end());
  sorted_grid.erase(std::unique(sorted_grid.begin(), sorted_grid.end()), sorted_grid.end());

  const auto ap = ap_by_grid(corpus, sorted_grid, metric);
  const std::size_t q = corpus.queries.size();

  CrossValidationResult result;
  result.grid = sorted_grid;
  // A single held-out query is scored only by its own AP, so the held-out
  // mean for a fixed epsilon is the mean AP over all folds.
  for (const auto& per_query : ap) {
    result.map_by_epsilon.push_back(std::accumulate(per_query.begin(), per_query.end(), 0.0) /
                                    static_cast<double>(q));
  }
  result.chosen_epsilon = sorted_grid[argmax_first(result.map_by_epsilon)];

  double nested = 0.0;
  for (std::size_t held = 0; held < q; ++held) {
    std::vector<double> train(sorted_grid.size(), 0.0);
    for (std::size_t g = 0; g < sorted_grid.size(); ++g) {
      for (std::size_t i = 0; i < q; ++i) {
        if (i != held) train[g] += ap[g][i];
      }
    }
    const std::size_t pick = q > 1 ? argmax_first(train) : argmax_first(result.map_by_epsilon);
    result.fold_epsilon.push_back(sorted_grid[pick]);
    nested += ap[pick][held];
  }
  result.nested_map = nested / static_cast<double>(q);
  return result;
}

void PowerStudyConfig::validate() const {
  if (epsilons.empty()) throw std::invalid_argument("power study: no epsilon values");
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("power study: epsilon must lie in (0,1)");
  }
  if (deltas.empty() && delta_grid_size == 0) throw std::invalid_argument("power study: empty delta grid");
  for (double d : deltas) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("power study: delta must be >= 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("power study: alpha must lie in (0,1)");
  if (reps == 0) throw std::invalid_argument("power study: reps must be >= 1");
  if (sample_sizes.empty()) throw std::invalid_argument("power study: no sample sizes");
  for (std::size_t n : sample_sizes) {
    if (n < 2) throw std::invalid_argument("power study: sample sizes must be >= 2");
  }
  if (method == TestMethod::Bca && bootstrap_replicates == 0) {
    throw std::invalid_argument("power study: bootstrap replicates must be >= 1");
  }
}

std::vector<double> delta_grid(double epsilon, std::size_t size) {
  if (size == 0) return {};
  if (size == 1) return {0.0};
  std::vector<double> out(size);
  for (std::size_t k = 0; k < size; ++k) {
    out[k] = 2.0 * epsilon * static_cast<double>(k) / static_cast<double>(size - 1);
  }
  return out;
}

std::vector<PowerCell> run_power_study(const PowerStudyConfig& cfg) {
  cfg.validate();
  std::vector<PowerCell> cells;
  std::uint64_t cell_index = 0;
  for (double eps : cfg.epsilons) {
    const auto deltas = cfg.deltas.empty() ? delta_grid(eps, cfg.delta_grid_size) : cfg.deltas;
    for (double delta : deltas) {
      for (std::size_t n : cfg.sample_sizes) {
        const std::uint64_t cell_seed = derive_seed(cfg.seed, cell_index++);
        PowerCell cell{eps, delta, n, 0, cfg.reps, 0.0};
        for (std::size_t r = 0; r < cfg.reps; ++r) {
          Rng rng = substream(cell_seed, r);
          std::uniform_real_distribution<double> unit(0.0, 1.0);
          std::vector<double> p(n), q(n);
          for (double& v : p) v = unit(rng);
          for (double& v : q) v = delta + unit(rng);
          const PointSet s1(std::move(p), 1), s2(std::move(q), 1);
          bool reject = false;
          if (cfg.method == TestMethod::Bound) {
            reject = similarity_test(s1, s2, eps, 0.0, cfg.alpha).reject;
          } else {
            const auto [a, b] = normalize_unit_box(s1, s2);
            reject = ci_similarity_test(a, b, eps, 0.0, cfg.alpha, cfg.bootstrap_replicates,
                                        derive_seed(cell_seed, cfg.reps + r))
                         .reject;
          }
          if (reject) ++cell.rejections;
        }
        cell.frequency = static_cast<double>(cell.rejections) / static_cast<double>(cfg.reps);
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

}  // namespace pvscore
