#ifndef PVSCORE_GEOMETRY_HPP
#define PVSCORE_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pvscore/point_set.hpp"

namespace pvscore {

enum class Metric { Chebyshev, Euclidean, Manhattan };

std::string_view metric_name(Metric metric);

/// Parses "linf"/"chebyshev", "l2"/"euclidean", "l1"/"manhattan".
Metric parse_metric(std::string_view name);

/// Ground distance between two points. Throws on dimension mismatch or NaN.
double distance(std::span<const double> a, std::span<const double> b, Metric metric);

/// Pooled per-dimension min-max scaling into [0,1]^d.
///
/// The affine map is computed over the union of both samples so that
/// cross-sample distances are scaled consistently. A coordinate that is
/// constant over the pooled points maps to 0.5.
std::pair<PointSet, PointSet> normalize_unit_box(const PointSet& s1, const PointSet& s2);

/// Bipartite epsilon-neighbor graph between two samples.
///
/// Right index j is in adjacency[i] iff d(x_i, y_j) <= epsilon. Lists are
/// sorted ascending.
struct NeighborGraph {
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  std::vector<std::vector<std::size_t>> adjacency;
  double epsilon = 0.0;
  Metric metric = Metric::Chebyshev;

  std::size_t edge_count() const;

  friend bool operator==(const NeighborGraph&, const NeighborGraph&) = default;
};

enum class GraphBuild {
  Auto,        // grid when the dimension is small enough, brute force otherwise
  BruteForce,  // O(nm) pairwise scan
  Grid,        // hashed cells of side epsilon
};

NeighborGraph build_neighbor_graph(const PointSet& s1, const PointSet& s2, double epsilon,
                                   Metric metric, GraphBuild strategy = GraphBuild::Auto);

namespace detail {
void require_same_dim(const PointSet& s1, const PointSet& s2);
void require_nonempty(const PointSet& s, const char* what);
void require_positive_epsilon(double epsilon);
// PointSet rows are already validated finite, so hot loops skip the checks.
double distance_unchecked(std::span<const double> a, std::span<const double> b, Metric metric);
}  // namespace detail

}  // namespace pvscore

#endif  // PVSCORE_GEOMETRY_HPP
