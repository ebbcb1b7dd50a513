#ifndef PVSCORE_EXACT_HPP
#define PVSCORE_EXACT_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "pvscore/geometry.hpp"
#include "pvscore/point_set.hpp"

namespace pvscore {

/// Weighted point masses. Masses are nonnegative and sum to 1 (within 1e-9).
struct DiscreteDist {
  PointSet support;
  std::vector<double> mass;

  /// Throws std::invalid_argument if the masses are invalid.
  void validate() const;

  /// n points with mass 1/n each.
  static DiscreteDist uniform(const PointSet& points);
};

/// Witness of a discrete PV optimum. Row indices refer to the first
/// distribution's support, column indices to the second's.
struct TransportPlan {
  std::map<std::pair<std::size_t, std::size_t>, double> flow;
  std::vector<double> leftover_left;   // w
  std::vector<double> leftover_right;  // v
  double objective = 0.0;
};

struct DiscretePvResult {
  double value = 0.0;
  TransportPlan plan;
};

/// Exact PV between two discrete distributions.
///
/// Minimizing half the leftover mass under the row and column balances is a
/// bipartite max-flow: source -> i with capacity mu1_i, i -> j uncapacitated
/// for neighbor pairs, j -> sink with capacity mu2_j. The value is 1 - F*.
/// Solved with Dinic's algorithm on doubles.
DiscretePvResult pv_discrete(const DiscreteDist& mu1, const DiscreteDist& mu2, double epsilon,
                             Metric metric = Metric::Chebyshev);

/// Largest combined support accepted by pv_discrete_bruteforce.
inline constexpr std::size_t kBruteForceMaxSupport = 16;

/// Testing oracle for pv_discrete, independent of any flow routine.
///
/// By max-flow/min-cut duality on the network above, a finite cut keeps a
/// subset X of first-sample atoms with all their neighbors N(X) on the source
/// side, so F* = min over X of mu1(not X) + mu2(N(X)). The smaller side's
/// subsets are enumerated exhaustively.
double pv_discrete_bruteforce(const DiscreteDist& mu1, const DiscreteDist& mu2, double epsilon,
                              Metric metric = Metric::Chebyshev);

/// Histogram of a sample in [0,1]^d on the regular grid of boxes of side nu.
///
/// Boxes are half-open [k nu, (k+1) nu) except the last one per axis, which
/// is closed. The support is the centers of nonempty boxes, in lexicographic
/// box order; masses are count / n.
DiscreteDist discretize(const PointSet& s, double nu);

}  // namespace pvscore

#endif  // PVSCORE_EXACT_HPP
