#ifndef PVSCORE_EVAL_HPP
#define PVSCORE_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pvscore/geometry.hpp"
#include "pvscore/inference.hpp"
#include "pvscore/point_set.hpp"

namespace pvscore {

/// AP = (1/r) sum_i i / r_i, with r_i the 1-based rank of the i-th relevant
/// item. Ranks must be strictly increasing and ranks.size() must equal r.
double average_precision(std::span<const std::size_t> ranks, std::size_t relevant_count);

/// Scores of every candidate against every query. Lower score = more similar.
struct RankingTask {
  std::vector<std::string> query_ids;
  std::vector<std::string> candidate_ids;
  std::vector<std::vector<bool>> relevance;  // [query][candidate]
  std::vector<std::vector<double>> scores;   // [query][candidate]
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct RankingReport {
  std::vector<double> per_query_ap;
  double map = 0.0;
  /// Precision and recall at every cutoff k = 1..C, averaged over queries.
  std::vector<PrPoint> pr_curve;
};

/// Candidate indices of one query in rank order: ascending score, ties
/// broken by candidate id.
std::vector<std::size_t> rank_candidates(const RankingTask& task, std::size_t query);

RankingReport mean_average_precision(const RankingTask& task);

/// Raw point sets for ranking by PV score.
struct RankingCorpus {
  std::vector<std::string> query_ids;
  std::vector<PointSet> queries;
  std::vector<std::string> candidate_ids;
  std::vector<PointSet> candidates;
  std::vector<std::vector<bool>> relevance;  // [query][candidate]
};

/// pv_hat of every (query, candidate) pair at `epsilon`.
RankingTask score_corpus(const RankingCorpus& corpus, double epsilon, Metric metric);

struct CrossValidationResult {
  double chosen_epsilon = 0.0;
  std::vector<double> grid;
  /// Mean held-out AP per grid value under leave-one-query-out.
  std::vector<double> map_by_epsilon;
  /// Epsilon picked on the remaining queries for each held-out query.
  std::vector<double> fold_epsilon;
  /// Mean held-out AP when every fold uses its own pick.
  double nested_map = 0.0;
};

/// Picks epsilon from `grid` by leave-one-query-out; ties go to the smallest
/// value.
CrossValidationResult cross_validate_epsilon(const RankingCorpus& corpus,
                                             std::span<const double> grid, Metric metric);

/// Synthetic shift study: P ~ U[0,1], Q ~ U[delta, 1 + delta], n points
/// each, testing H0: PV(P, Q, epsilon) = 0 at level alpha.
struct PowerStudyConfig {
  std::vector<double> epsilons{0.1, 0.2, 0.3, 0.4, 0.5};
  std::size_t delta_grid_size = 10;
  /// When non-empty, used for every epsilon instead of the grid.
  std::vector<double> deltas;
  double alpha = 0.05;
  std::size_t reps = 500;
  std::vector<std::size_t> sample_sizes{250, 500, 1000, 2000, 5000};
  std::uint64_t seed = 0;
  TestMethod method = TestMethod::Bound;
  std::size_t bootstrap_replicates = 1000;

  void validate() const;
};

struct PowerCell {
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t n = 0;
  std::size_t rejections = 0;
  std::size_t reps = 0;
  double frequency = 0.0;
};

/// `size` equally spaced values covering [0, 2 epsilon], both ends included.
std::vector<double> delta_grid(double epsilon, std::size_t size);

/// One cell per (epsilon, delta, n). Delta = 0 cells estimate the type-1
/// error, the others the power. Cells draw from per-cell substreams.
std::vector<PowerCell> run_power_study(const PowerStudyConfig& cfg);

}  // namespace pvscore

#endif  // PVSCORE_EVAL_HPP
