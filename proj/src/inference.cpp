#include "pvscore/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pvscore/matching.hpp"

namespace pvscore {

namespace {

void require_open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
  }
}

void require_bound_epsilon(double epsilon) {
  detail::require_positive_epsilon(epsilon);
  if (!(epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1) for the bounds");
}

double boxes_per_axis(double epsilon) {
  const double inverse = 1.0 / epsilon;
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) <= 1e-9 * std::max(1.0, rounded)) return rounded;
  return std::ceil(inverse);
}

TestReport run_bound_test(TestKind kind, const PointSet& s1, const PointSet& s2, double epsilon,
                          double theta, double alpha, Metric metric) {
  require_bound_epsilon(epsilon);
  require_open_unit(alpha, "alpha");
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0,1]");
  if (kind == TestKind::Similarity && !(theta < 1.0)) {
    throw std::invalid_argument("theta must lie in [0,1) for the similarity test");
  }
  const auto [a, b] = normalize_unit_box(s1, s2);
  const PvEstimate est = pv_hat(a, b, epsilon, metric);

  TestReport report;
  report.kind = kind;
  report.method = TestMethod::Bound;
  report.theta = theta;
  report.alpha = alpha;
  report.metric = metric;
  report.n = s1.size();
  report.m = s2.size();
  report.params = make_bound_params(epsilon, s1.dim(), std::min(s1.size(), s2.size()), alpha);
  report.statistic = est.value;
  report.threshold = deviation_bound(report.params);
  if (kind == TestKind::Similarity) {
    report.reject = report.statistic > report.threshold + theta;
  } else {
    report.vacuous = !(theta > report.threshold);
    report.reject = !report.vacuous && report.statistic < theta - report.threshold;
  }
  return report;
}

}  // namespace

double cover_cardinality(double epsilon, std::size_t dim) {
  detail::require_positive_epsilon(epsilon);
  if (dim == 0) throw std::invalid_argument("dimension must be >= 1");
  return std::pow(boxes_per_axis(epsilon), static_cast<double>(dim));
}

BoundParams make_bound_params(double epsilon, std::size_t dim, std::size_t n_min, double delta) {
  require_bound_epsilon(epsilon);
  require_open_unit(delta, "delta");
  if (n_min == 0) throw std::invalid_argument("N must be >= 1");
  return BoundParams{epsilon, dim, n_min, delta, cover_cardinality(epsilon, dim)};
}

double log_cover_term(double cover) {
  if (!(cover >= 2.0)) {
    throw std::invalid_argument("cover cardinality must be >= 2 (log(2^M - 2) is undefined below)");
  }
  constexpr double ln2 = std::numbers::ln2;
  return ln2 + cover * ln2 + std::log1p(-std::exp2(1.0 - cover));
}

double deviation_bound(const BoundParams& p) {
  require_open_unit(p.delta_or_alpha, "delta");
  if (p.n_min == 0) throw std::invalid_argument("N must be >= 1");
  const double inner = log_cover_term(p.cover_cardinality) - std::log(p.delta_or_alpha);
  return std::sqrt(2.0 * inner / static_cast<double>(p.n_min));
}

double similarity_threshold(double epsilon, std::size_t dim, std::size_t n_min, double alpha) {
  return deviation_bound(make_bound_params(epsilon, dim, n_min, alpha));
}

double ppv_threshold(double epsilon, std::size_t projections, std::size_t n_min, double alpha) {
  require_bound_epsilon(epsilon);
  require_open_unit(alpha, "alpha");
  if (projections == 0) throw std::invalid_argument("number of projections must be >= 1");
  if (n_min == 0) throw std::invalid_argument("N must be >= 1");
  const double inner = std::log(static_cast<double>(projections)) +
                       2.0 * log_cover_term(cover_cardinality(epsilon, 1)) - 2.0 * std::log(alpha);
  return std::sqrt(inner / static_cast<double>(n_min));
}

std::string_view test_kind_name(TestKind kind) {
  switch (kind) {
    case TestKind::Similarity:
      return "similarity";
    case TestKind::Equivalence:
      return "equivalence";
    case TestKind::Ppv:
      return "ppv";
  }
  return "unknown";
}

std::string_view test_method_name(TestMethod method) {
  return method == TestMethod::Bound ? "bound" : "bca";
}

TestReport similarity_test(const PointSet& s1, const PointSet& s2, double epsilon, double theta,
                           double alpha, Metric metric) {
  return run_bound_test(TestKind::Similarity, s1, s2, epsilon, theta, alpha, metric);
}

TestReport equivalence_test(const PointSet& s1, const PointSet& s2, double epsilon, double theta,
                            double alpha, Metric metric) {
  return run_bound_test(TestKind::Equivalence, s1, s2, epsilon, theta, alpha, metric);
}

double required_sample_size_bound(double theta0, double epsilon, std::size_t dim, double alpha,
                                  double beta) {
  if (!(theta0 > 0.0 && theta0 <= 1.0)) throw std::invalid_argument("theta0 must lie in (0,1]");
  require_bound_epsilon(epsilon);
  require_open_unit(alpha, "alpha");
  require_open_unit(beta, "beta");
  const double numerator = 4.0 * log_cover_term(cover_cardinality(epsilon, dim)) -
                           2.0 * std::log(alpha) - 2.0 * std::log(beta);
  return numerator / (theta0 * theta0);
}

std::uint64_t required_sample_size(double theta0, double epsilon, std::size_t dim, double alpha,
                                   double beta) {
  const double bound = std::ceil(required_sample_size_bound(theta0, epsilon, dim, alpha, beta));
  if (!(bound < 18446744073709551616.0)) {
    throw std::overflow_error("required sample size does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(bound);
}

SphereRegime sphere_regime(double delta, double eta, double epsilon, std::size_t dim) {
  require_open_unit(delta, "delta");
  require_open_unit(epsilon, "epsilon");
  if (!(eta >= 0.0 && eta < 2.0 / 3.0)) throw std::invalid_argument("eta must lie in [0, 2/3)");
  if (dim == 0) throw std::invalid_argument("dimension must be >= 1");

  SphereRegime r;
  const double gap = 1.0 - 1.5 * eta;
  r.n_low_bound = std::log(1.0 / delta) / (2.0 * gap * gap);
  r.n_high_bound =
      0.5 * eta * std::exp(static_cast<double>(dim) * (1.0 - 0.5 * epsilon * epsilon) / 2.0);
  r.n_low = static_cast<std::uint64_t>(std::max(1.0, std::ceil(r.n_low_bound)));
  const double high = std::floor(r.n_high_bound);
  if (high >= static_cast<double>(r.n_low)) {
    r.n_high = high < 18446744073709551616.0 ? static_cast<std::uint64_t>(high)
                                             : std::numeric_limits<std::uint64_t>::max();
  }
  return r;
}

}  // namespace pvscore
