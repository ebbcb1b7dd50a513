#ifndef PVSCORE_MATCHING_HPP
#define PVSCORE_MATCHING_HPP

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "pvscore/geometry.hpp"
#include "pvscore/point_set.hpp"

namespace pvscore {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

struct Matching {
  std::vector<std::size_t> pair_of_left;   // right index or kUnmatched
  std::vector<std::size_t> pair_of_right;  // left index or kUnmatched
  std::size_t cardinality = 0;
};

/// Maximum-cardinality matching by Hopcroft-Karp, O(E sqrt(V)).
///
/// Layers are grown and searched in ascending index order, so the result is
/// a deterministic function of the (sorted) adjacency.
Matching maximum_matching(const NeighborGraph& graph);

/// Maximum matching of two one-dimensional samples under the threshold
/// predicate distance(x, y) <= epsilon, by a sorted two-pointer sweep in
/// O((n + m) log(n + m)). Produces the same cardinality as
/// maximum_matching on the corresponding graph.
Matching sweep_matching_1d(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric);

/// Sampled PV estimate plus the matching witness.
struct PvEstimate {
  double value = 0.0;
  std::size_t s_w = 0;  // unmatched points of the first sample
  std::size_t s_v = 0;  // unmatched points of the second sample
  std::vector<std::size_t> unmatched_left;
  std::vector<std::size_t> unmatched_right;
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;
  double epsilon = 0.0;
  Metric metric = Metric::Chebyshev;
  std::size_t n = 0;
  std::size_t m = 0;
};

/// 0.5 * (unmatched_left / n + unmatched_right / m) for a matching of size
/// `cardinality`.
double pv_from_cardinality(std::size_t cardinality, std::size_t n, std::size_t m);

/// PV estimate of two samples: maximum matching on the epsilon-neighbor graph,
/// then half the sum of unmatched fractions. One-dimensional inputs take the
/// sweep path; everything else goes through Hopcroft-Karp.
PvEstimate pv_hat(const PointSet& s1, const PointSet& s2, double epsilon,
                  Metric metric = Metric::Chebyshev);

/// Same as pv_hat but always builds the graph and runs Hopcroft-Karp.
PvEstimate pv_hat_graph(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric);

/// Vertices covered by every maximum matching. Removing such a vertex drops
/// the maximum cardinality by one; removing any other vertex leaves it.
struct EssentialVertices {
  std::vector<bool> left;
  std::vector<bool> right;
};

/// Computed by alternating-path reachability from the free vertices of a
/// maximum matching, O(V + E).
EssentialVertices essential_vertices(const NeighborGraph& graph, const Matching& matching);

/// Leave-one-out PV values over the pooled samples: entries 0..n-1 drop a
/// point of the first sample, entries n..n+m-1 drop a point of the second.
/// Requires n >= 2 and m >= 2.
std::vector<double> leave_one_out_pv(const PointSet& s1, const PointSet& s2, double epsilon,
                                     Metric metric);

}  // namespace pvscore

#endif  // PVSCORE_MATCHING_HPP
