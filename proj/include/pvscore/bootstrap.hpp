#ifndef PVSCORE_BOOTSTRAP_HPP
#define PVSCORE_BOOTSTRAP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pvscore/geometry.hpp"
#include "pvscore/inference.hpp"
#include "pvscore/point_set.hpp"

namespace pvscore {

inline constexpr std::size_t kDefaultReplicates = 1000;
inline constexpr std::size_t kMinRecommendedReplicates = 100;

/// Standard normal CDF.
double normal_cdf(double z);
/// Standard normal quantile; p must lie in (0,1).
double normal_quantile(double p);

/// B bootstrap PV values. Each replicate resamples both samples
/// independently with replacement at their original sizes, from its own
/// substream of `seed`.
std::vector<double> bootstrap_pv(const PointSet& s1, const PointSet& s2, double epsilon,
                                 Metric metric, std::size_t replicates, std::uint64_t seed);

struct CiResult {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::size_t replicate_count = 0;
  double z0 = 0.0;
  double acceleration = 0.0;
  bool degenerate = false;  // every replicate identical
  std::vector<double> replicates;
};

/// Order statistic at fraction q of sorted values: sorted[ceil(q B) - 1],
/// clamped to the valid range.
double order_statistic(std::span<const double> sorted, double q);

/// Plain percentile interval at the given confidence level.
CiResult percentile_interval(std::span<const double> replicates, double level);

/// Acceleration constant from jackknife values:
/// sum (mean - t_i)^3 / (6 (sum (mean - t_i)^2)^(3/2)), zero when all agree.
double jackknife_acceleration(std::span<const double> jackknife_values);

/// BCa interval with a caller-supplied acceleration.
///
/// z0 = Phi^-1((#{t* < observed} + #{t* == observed} / 2) / B), clamped to
/// [-4, 4]. The endpoints are order statistics at
/// Phi(z0 + (z0 + z) / (1 - a (z0 + z))) for z = Phi^-1(alpha / 2) and
/// Phi^-1(1 - alpha / 2), clamped to [0,1].
CiResult bca_interval_with_acceleration(std::span<const double> replicates, double observed,
                                        double level, double acceleration);

/// BCa interval whose acceleration comes from the pooled leave-one-out
/// jackknife over all n + m points.
CiResult bca_interval(std::span<const double> replicates, double observed, double level,
                      const PointSet& s1, const PointSet& s2, double epsilon, Metric metric);

/// Observed PV, replicates and BCa interval at level 1 - alpha.
CiResult bca_pv_interval(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric,
                         double alpha, std::size_t replicates, std::uint64_t seed);

/// Rejects H0: PV <= theta iff [0, theta] is not inside the BCa interval.
TestReport ci_similarity_test(const PointSet& s1, const PointSet& s2, double epsilon, double theta,
                              double alpha, std::size_t replicates, std::uint64_t seed,
                              Metric metric = Metric::Chebyshev);

/// Rejects H0: PV >= theta (infers similarity) iff the BCa upper end < theta.
TestReport ci_equivalence_test(const PointSet& s1, const PointSet& s2, double epsilon,
                               double theta, double alpha, std::size_t replicates,
                               std::uint64_t seed, Metric metric = Metric::Chebyshev);

}  // namespace pvscore

#endif  // PVSCORE_BOOTSTRAP_HPP
