#include "pvscore/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "pvscore/matching.hpp"
#include "pvscore/random.hpp"

namespace pvscore {

namespace {

constexpr double kZ0Clamp = 4.0;

void require_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0,1)");
}

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Phi(z0 + (z0 + z) / (1 - a (z0 + z))); a non-positive denominator is the
// limit of the map, i.e. 0 or 1.
double adjusted_fraction(double z0, double z, double a) {
  const double shifted = z0 + z;
  const double denom = 1.0 - a * shifted;
  if (!(denom > 0.0)) return shifted < 0.0 ? 0.0 : 1.0;
  return normal_cdf(z0 + shifted / denom);
}

TestReport ci_report(TestKind kind, const PointSet& s1, const PointSet& s2, double epsilon,
                     double theta, double alpha, std::size_t replicates, std::uint64_t seed,
                     Metric metric) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0,1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  const double observed = pv_hat(s1, s2, epsilon, metric).value;
  const auto reps = bootstrap_pv(s1, s2, epsilon, metric, replicates, seed);
  const CiResult ci = bca_interval(reps, observed, 1.0 - alpha, s1, s2, epsilon, metric);

  TestReport report;
  report.kind = kind;
  report.method = TestMethod::Bca;
  report.theta = theta;
  report.alpha = alpha;
  report.metric = metric;
  report.n = s1.size();
  report.m = s2.size();
  report.params = BoundParams{epsilon, s1.dim(), std::min(s1.size(), s2.size()), alpha,
                              cover_cardinality(epsilon, s1.dim())};
  report.statistic = observed;
  report.threshold = theta;
  report.ci_lower = ci.lower;
  report.ci_upper = ci.upper;
  if (kind == TestKind::Similarity) {
    const bool contained = ci.lower <= 0.0 && theta <= ci.upper;
    report.reject = !contained;
  } else {
    report.reject = ci.upper < theta;
  }
  return report;
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

std::vector<double> bootstrap_pv(const PointSet& s1, const PointSet& s2, double epsilon,
                                 Metric metric, std::size_t replicates, std::uint64_t seed) {
  if (replicates == 0) throw std::invalid_argument("bootstrap: need at least one replicate");
  detail::require_nonempty(s1, "first sample");
  detail::require_nonempty(s2, "second sample");
  detail::require_same_dim(s1, s2);
  detail::require_positive_epsilon(epsilon);

  const std::size_t n = s1.size(), m = s2.size();
  std::vector<double> out;
  out.reserve(replicates);
  std::vector<std::size_t> idx1(n), idx2(m);
  for (std::size_t b = 0; b < replicates; ++b) {
    Rng rng = substream(seed, b);
    std::uniform_int_distribution<std::size_t> pick1(0, n - 1), pick2(0, m - 1);
    for (auto& i : idx1) i = pick1(rng);
    for (auto& j : idx2) j = pick2(rng);
    out.push_back(pv_hat(s1.subset(idx1), s2.subset(idx2), epsilon, metric).value);
  }
  return out;
}

double order_statistic(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("order_statistic: no values");
  const double b = static_cast<double>(sorted.size());
  const double rank = std::ceil(std::clamp(q, 0.0, 1.0) * b) - 1.0;
  const auto k = static_cast<std::size_t>(std::clamp(rank, 0.0, b - 1.0));
  return sorted[k];
}

CiResult percentile_interval(std::span<const double> replicates, double level) {
  require_level(level);
  const auto sorted = sorted_copy(replicates);
  const double tail = (1.0 - level) / 2.0;
  CiResult ci;
  ci.level = level;
  ci.replicate_count = sorted.size();
  ci.lower = std::clamp(order_statistic(sorted, tail), 0.0, 1.0);
  ci.upper = std::clamp(order_statistic(sorted, 1.0 - tail), 0.0, 1.0);
  ci.degenerate = sorted.front() == sorted.back();
  ci.replicates.assign(replicates.begin(), replicates.end());
  return ci;
}

double jackknife_acceleration(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double sum2 = 0.0, sum3 = 0.0;
  for (double v : values) {
    const double dev = mean - v;
    sum2 += dev * dev;
    sum3 += dev * dev * dev;
  }
  if (!(sum2 > 0.0)) return 0.0;
  return sum3 / (6.0 * std::pow(sum2, 1.5));
}

CiResult bca_interval_with_acceleration(std::span<const double> replicates, double observed,
                                        double level, double acceleration) {
  require_level(level);
  if (replicates.empty()) throw std::invalid_argument("bca: no replicates");
  const auto sorted = sorted_copy(replicates);

  CiResult ci;
  ci.level = level;
  ci.replicate_count = sorted.size();
  ci.acceleration = acceleration;
  ci.replicates.assign(replicates.begin(), replicates.end());
  if (sorted.front() == sorted.back()) {
    ci.degenerate = true;
    ci.lower = ci.upper = std::clamp(sorted.front(), 0.0, 1.0);
    return ci;
  }

  double below = 0.0;
  for (double v : sorted) {
    if (v < observed) {
      below += 1.0;
    } else if (v == observed) {
      below += 0.5;
    }
  }
  const double fraction = below / static_cast<double>(sorted.size());
  if (fraction <= 0.0) {
    ci.z0 = -kZ0Clamp;
  } else if (fraction >= 1.0) {
    ci.z0 = kZ0Clamp;
  } else {
    ci.z0 = std::clamp(normal_quantile(fraction), -kZ0Clamp, kZ0Clamp);
  }

  const double tail = (1.0 - level) / 2.0;
  const double lo = adjusted_fraction(ci.z0, normal_quantile(tail), acceleration);
  const double hi = adjusted_fraction(ci.z0, normal_quantile(1.0 - tail), acceleration);
  ci.lower = std::clamp(order_statistic(sorted, lo), 0.0, 1.0);
  ci.upper = std::clamp(order_statistic(sorted, hi), 0.0, 1.0);
  return ci;
}

CiResult bca_interval(std::span<const double> replicates, double observed, double level,
                      const PointSet& s1, const PointSet& s2, double epsilon, Metric metric) {
  const auto [lo, hi] = std::minmax_element(replicates.begin(), replicates.end());
  double acceleration = 0.0;
  if (lo != replicates.end() && *lo != *hi && s1.size() >= 2 && s2.size() >= 2) {
    acceleration = jackknife_acceleration(leave_one_out_pv(s1, s2, epsilon, metric));
  }
  return bca_interval_with_acceleration(replicates, observed, level, acceleration);
}

CiResult bca_pv_interval(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric,
                         double alpha, std::size_t replicates, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  const double observed = pv_hat(s1, s2, epsilon, metric).value;
  const auto reps = bootstrap_pv(s1, s2, epsilon, metric, replicates, seed);
  return bca_interval(reps, observed, 1.0 - alpha, s1, s2, epsilon, metric);
}

TestReport ci_similarity_test(const PointSet& s1, const PointSet& s2, double epsilon, double theta,
                              double alpha, std::size_t replicates, std::uint64_t seed,
                              Metric metric) {
  return ci_report(TestKind::Similarity, s1, s2, epsilon, theta, alpha, replicates, seed, metric);
}

TestReport ci_equivalence_test(const PointSet& s1, const PointSet& s2, double epsilon,
                               double theta, double alpha, std::size_t replicates,
                               std::uint64_t seed, Metric metric) {
  return ci_report(TestKind::Equivalence, s1, s2, epsilon, theta, alpha, replicates, seed, metric);
}

}  // namespace pvscore
