#include "pvscore/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pvscore/matching.hpp"
#include "pvscore/random.hpp"

namespace pvscore {

ProjectionSet sample_directions(std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("sample_directions: dimension must be >= 1");
  if (count == 0) throw std::invalid_argument("sample_directions: need at least one projection");
  ProjectionSet set{{}, dim, seed};
  set.directions.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng = substream(seed, k);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> r(dim);
    double norm = 0.0;
    while (!(norm > 0.0)) {
      for (double& v : r) v = normal(rng);
      norm = 0.0;
      for (double v : r) norm += v * v;
      norm = std::sqrt(norm);
    }
    for (double& v : r) v /= norm;
    set.directions.push_back(std::move(r));
  }
  return set;
}

PointSet project_to_line(const PointSet& s, std::span<const double> direction) {
  if (direction.size() != s.dim()) throw std::invalid_argument("project_to_line: dimension mismatch");
  double lo = 0.0, l1 = 0.0;
  for (double r : direction) {
    lo += std::min(r, 0.0);
    l1 += std::abs(r);
  }
  if (!(l1 > 0.0)) throw std::invalid_argument("project_to_line: zero direction");
  std::vector<double> values(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto x = s.row(i);
    double dot = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) dot += direction[k] * x[k];
    values[i] = (dot - lo) / l1;
  }
  return PointSet(std::move(values), 1);
}

PpvEstimate ppv_hat(const PointSet& s1, const PointSet& s2, double epsilon,
                    const ProjectionSet& projections) {
  detail::require_same_dim(s1, s2);
  if (s1.dim() != projections.dim) throw std::invalid_argument("ppv_hat: projection dimension mismatch");
  if (projections.size() == 0) throw std::invalid_argument("ppv_hat: no projections");
  PpvEstimate est;
  est.per_projection.reserve(projections.size());
  for (const auto& r : projections.directions) {
    const double v = pv_hat(project_to_line(s1, r), project_to_line(s2, r), epsilon).value;
    est.per_projection.push_back(v);
  }
  const auto best = std::max_element(est.per_projection.begin(), est.per_projection.end());
  est.value = *best;
  est.argmax_index = static_cast<std::size_t>(best - est.per_projection.begin());
  return est;
}

TestReport ppv_similarity_test(const SamplePairSource& source, double epsilon,
                               std::size_t projections, double alpha, std::uint64_t seed,
                               bool resample_per_projection) {
  if (projections == 0) throw std::invalid_argument("ppv test: need at least one projection");
  detail::require_positive_epsilon(epsilon);
  if (!(epsilon < 1.0)) throw std::invalid_argument("ppv test: epsilon must lie in (0,1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ppv test: alpha must lie in (0,1)");
  std::pair<PointSet, PointSet> fixed;
  if (!resample_per_projection) fixed = source(0);

  TestReport report;
  report.kind = TestKind::Ppv;
  report.method = TestMethod::Bound;
  report.alpha = alpha;
  report.metric = Metric::Chebyshev;
  std::size_t n_min = std::numeric_limits<std::size_t>::max();
  std::size_t dim = 0;

  // Directions come from a fixed-seed ProjectionSet so the k-th direction is
  // the same whether or not the data are resampled.
  ProjectionSet directions;
  for (std::size_t k = 0; k < projections; ++k) {
    std::pair<PointSet, PointSet> drawn;
    if (resample_per_projection) drawn = source(k);
    const auto& [s1, s2] = resample_per_projection ? drawn : fixed;
    detail::require_nonempty(s1, "first sample");
    detail::require_nonempty(s2, "second sample");
    detail::require_same_dim(s1, s2);
    if (k == 0) {
      dim = s1.dim();
      directions = sample_directions(dim, projections, seed);
      report.n = s1.size();
      report.m = s2.size();
    } else if (s1.dim() != dim) {
      throw std::invalid_argument("ppv test: sample dimension changed between projections");
    }
    n_min = std::min({n_min, s1.size(), s2.size()});
    const auto& r = directions.directions[k];
    report.per_projection.push_back(
        pv_hat(project_to_line(s1, r), project_to_line(s2, r), epsilon).value);
  }
  report.statistic = *std::max_element(report.per_projection.begin(), report.per_projection.end());
  report.threshold = ppv_threshold(epsilon, projections, n_min, alpha);
  report.params = BoundParams{epsilon, 1, n_min, alpha, cover_cardinality(epsilon, 1)};
  report.reject = report.statistic > report.threshold;
  return report;
}

TestReport ppv_similarity_test(const PointSet& s1, const PointSet& s2, double epsilon,
                               std::size_t projections, double alpha, std::uint64_t seed) {
  return ppv_similarity_test([&](std::size_t) { return std::make_pair(s1, s2); }, epsilon,
                             projections, alpha, seed, false);
}

}  // namespace pvscore
