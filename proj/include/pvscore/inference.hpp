#ifndef PVSCORE_INFERENCE_HPP
#define PVSCORE_INFERENCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pvscore/geometry.hpp"
#include "pvscore/point_set.hpp"

namespace pvscore {

/// Inputs of the finite-sample convergence bound.
struct BoundParams {
  double epsilon = 0.0;           // in (0,1)
  std::size_t dim = 1;            // d
  std::size_t n_min = 1;          // N = min(n, m)
  double delta_or_alpha = 0.05;   // in (0,1)
  double cover_cardinality = 0;   // ceil(1/epsilon)^d, kept as a double (it overflows integers)
};

/// ceil(1/epsilon)^d, the number of L-infinity boxes of side epsilon needed to
/// cover [0,1]^d. A reciprocal within rounding of an integer counts as exact.
double cover_cardinality(double epsilon, std::size_t dim);

BoundParams make_bound_params(double epsilon, std::size_t dim, std::size_t n_min, double delta);

/// log(2 (2^M - 2)) evaluated as log 2 + M log 2 + log1p(-2^(1-M)).
/// Requires M >= 2.
double log_cover_term(double cover);

/// Deviation bound: with probability >= 1 - delta the sampled PV is within
/// eta of the population PV, eta = sqrt(2 (log(2(2^M - 2)) + log(1/delta)) / N).
double deviation_bound(const BoundParams& p);

/// Rejection threshold t of the bound-based similarity test.
double similarity_threshold(double epsilon, std::size_t dim, std::size_t n_min, double alpha);

/// Threshold of the projected test:
/// sqrt((log K + 2 log(2(2^M1 - 2)) + 2 log(1/alpha)) / N), M1 = ceil(1/epsilon).
double ppv_threshold(double epsilon, std::size_t projections, std::size_t n_min, double alpha);

enum class TestKind { Similarity, Equivalence, Ppv };
enum class TestMethod { Bound, Bca };

std::string_view test_kind_name(TestKind kind);
std::string_view test_method_name(TestMethod method);

/// Outcome of any of the hypothesis tests, with every input echoed.
struct TestReport {
  TestKind kind = TestKind::Similarity;
  TestMethod method = TestMethod::Bound;
  double statistic = 0.0;
  double threshold = 0.0;
  double theta = 0.0;
  double alpha = 0.05;
  bool reject = false;
  bool vacuous = false;  // equivalence test with an empty rejection region
  BoundParams params;
  Metric metric = Metric::Chebyshev;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<double> ci_lower;
  std::optional<double> ci_upper;
  std::vector<double> per_projection;
};

/// Tests H0: PV <= theta against PV > theta.
///
/// Both samples go through normalize_unit_box first, so epsilon is in
/// normalized units. Rejects iff pv_hat > t + theta.
TestReport similarity_test(const PointSet& s1, const PointSet& s2, double epsilon, double theta,
                           double alpha, Metric metric = Metric::Chebyshev);

/// Tests H0: PV >= theta; rejecting it infers similarity.
///
/// Rejects iff pv_hat < theta - t. When theta <= t the rejection region is
/// empty: the report is flagged vacuous and never rejects.
TestReport equivalence_test(const PointSet& s1, const PointSet& s2, double epsilon, double theta,
                            double alpha, Metric metric = Metric::Chebyshev);

/// Real-valued sample size bound
/// (4 log(2(2^M - 2)) + 2 log(1/alpha) + 2 log(1/beta)) / theta0^2.
double required_sample_size_bound(double theta0, double epsilon, std::size_t dim, double alpha,
                                  double beta);

/// Smallest integer N meeting required_sample_size_bound. Throws
/// std::overflow_error if it does not fit in 64 bits.
std::uint64_t required_sample_size(double theta0, double epsilon, std::size_t dim, double alpha,
                                   double beta);

/// Sample sizes for which uniform samples on the unit sphere S^(d-1) give
/// pv_hat > eta with probability >= 1 - delta, even though PV = 0:
/// log(1/delta) / (2 (1 - 3 eta / 2)^2) <= N <= (eta / 2) exp(d (1 - eps^2 / 2) / 2).
struct SphereRegime {
  double n_low_bound = 0.0;
  double n_high_bound = 0.0;
  std::uint64_t n_low = 0;
  std::optional<std::uint64_t> n_high;  // empty when the interval is empty

  bool empty() const { return !n_high.has_value(); }
  bool contains(std::uint64_t n) const { return n_high && n >= n_low && n <= *n_high; }
};

SphereRegime sphere_regime(double delta, double eta, double epsilon, std::size_t dim);

}  // namespace pvscore

#endif  // PVSCORE_INFERENCE_HPP
