#include "pvscore/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pvscore {

namespace detail {

void require_same_dim(const PointSet& s1, const PointSet& s2) {
  if (s1.dim() != s2.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(s1.dim()) + " vs " +
                                std::to_string(s2.dim()));
  }
}

void require_nonempty(const PointSet& s, const char* what) {
  if (s.empty()) throw std::invalid_argument(std::string(what) + " is empty");
}

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be a positive finite number");
  }
}

}  // namespace detail

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::Chebyshev:
      return "linf";
    case Metric::Euclidean:
      return "l2";
    case Metric::Manhattan:
      return "l1";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "linf" || name == "chebyshev" || name == "Linf") return Metric::Chebyshev;
  if (name == "l2" || name == "euclidean" || name == "L2") return Metric::Euclidean;
  if (name == "l1" || name == "manhattan" || name == "L1") return Metric::Manhattan;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

double detail::distance_unchecked(std::span<const double> a, std::span<const double> b,
                                  Metric metric) {
  double acc = 0.0;
  // In one dimension every supported metric is |a - b|; computing it directly
  // keeps the 1-D sweep and the graph path on the same predicate.
  if (a.size() == 1) {
    acc = std::abs(a[0] - b[0]);
  } else {
    switch (metric) {
      case Metric::Chebyshev:
        for (std::size_t k = 0; k < a.size(); ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
        break;
      case Metric::Euclidean:
        for (std::size_t k = 0; k < a.size(); ++k) {
          const double delta = a[k] - b[k];
          acc += delta * delta;
        }
        acc = std::sqrt(acc);
        break;
      case Metric::Manhattan:
        for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
        break;
    }
  }
  return acc;
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
  // max() drops NaN silently, so check the inputs rather than the result.
  auto is_nan = [](double v) { return std::isnan(v); };
  if (std::any_of(a.begin(), a.end(), is_nan) || std::any_of(b.begin(), b.end(), is_nan)) {
    throw std::invalid_argument("distance: NaN input");
  }
  return detail::distance_unchecked(a, b, metric);
}

std::pair<PointSet, PointSet> normalize_unit_box(const PointSet& s1, const PointSet& s2) {
  detail::require_nonempty(s1, "first sample");
  detail::require_nonempty(s2, "second sample");
  detail::require_same_dim(s1, s2);
  const std::size_t d = s1.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (const PointSet* s : {&s1, &s2}) {
    for (std::size_t i = 0; i < s->size(); ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], s->at(i, k));
        hi[k] = std::max(hi[k], s->at(i, k));
      }
    }
  }
  auto apply = [&](const PointSet& s) {
    std::vector<double> coords(s.coords());
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        double& v = coords[i * d + k];
        const double span = hi[k] - lo[k];
        if (span > 0.0) {
          v = (v - lo[k]) / span;
          v = std::clamp(v, 0.0, 1.0);
        } else {
          v = 0.5;
        }
      }
    }
    return PointSet(std::move(coords), d);
  };
  return {apply(s1), apply(s2)};
}

std::size_t NeighborGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& adj : adjacency) total += adj.size();
  return total;
}

namespace {

NeighborGraph brute_force_graph(const PointSet& s1, const PointSet& s2, double epsilon,
                                Metric metric) {
  NeighborGraph g{s1.size(), s2.size(), {}, epsilon, metric};
  g.adjacency.resize(s1.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    auto x = s1.row(i);
    for (std::size_t j = 0; j < s2.size(); ++j) {
      if (detail::distance_unchecked(x, s2.row(j), metric) <= epsilon) g.adjacency[i].push_back(j);
    }
  }
  return g;
}

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : key) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Every metric here is dominated by L-infinity, so an epsilon ball under any
// of them sits inside the 3^d block of cells around the query cell.
NeighborGraph grid_graph(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric) {
  const std::size_t d = s1.dim();
  // Slightly wider than epsilon so rounding in the division cannot push two
  // neighbors two cells apart.
  const double side = epsilon * (1.0 + 1e-9);
  auto cell_of = [&](std::span<const double> p) {
    std::vector<std::int64_t> key(d);
    for (std::size_t k = 0; k < d; ++k) {
      key[k] = static_cast<std::int64_t>(std::floor(p[k] / side));
    }
    return key;
  };

  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, CellHash> cells;
  for (std::size_t j = 0; j < s2.size(); ++j) cells[cell_of(s2.row(j))].push_back(j);

  NeighborGraph g{s1.size(), s2.size(), {}, epsilon, metric};
  g.adjacency.resize(s1.size());
  std::size_t block = 1;
  for (std::size_t k = 0; k < d; ++k) block *= 3;

  std::vector<std::int64_t> probe(d);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    auto x = s1.row(i);
    const auto home = cell_of(x);
    auto& adj = g.adjacency[i];
    for (std::size_t code = 0; code < block; ++code) {
      std::size_t c = code;
      for (std::size_t k = 0; k < d; ++k) {
        probe[k] = home[k] + static_cast<std::int64_t>(c % 3) - 1;
        c /= 3;
      }
      auto it = cells.find(probe);
      if (it == cells.end()) continue;
      for (std::size_t j : it->second) {
        if (detail::distance_unchecked(x, s2.row(j), metric) <= epsilon) adj.push_back(j);
      }
    }
    std::sort(adj.begin(), adj.end());
  }
  return g;
}

bool grid_is_safe(const PointSet& s1, const PointSet& s2, double epsilon) {
  // Cell keys must fit comfortably in int64.
  constexpr double kLimit = 1e15;
  for (const PointSet* s : {&s1, &s2}) {
    for (double v : s->coords()) {
      if (std::abs(v / epsilon) > kLimit) return false;
    }
  }
  return true;
}

}  // namespace

NeighborGraph build_neighbor_graph(const PointSet& s1, const PointSet& s2, double epsilon,
                                   Metric metric, GraphBuild strategy) {
  detail::require_same_dim(s1, s2);
  detail::require_positive_epsilon(epsilon);
  if (strategy == GraphBuild::Auto) {
    const bool small_dim = s1.dim() <= 4;
    const bool worth_it = s1.size() * s2.size() > 4096;
    strategy = (small_dim && worth_it && grid_is_safe(s1, s2, epsilon)) ? GraphBuild::Grid
                                                                        : GraphBuild::BruteForce;
  }
  if (strategy == GraphBuild::Grid) {
    if (!grid_is_safe(s1, s2, epsilon)) {
      throw std::invalid_argument("grid index: coordinates too large relative to epsilon");
    }
    return grid_graph(s1, s2, epsilon, metric);
  }
  return brute_force_graph(s1, s2, epsilon, metric);
}

}  // namespace pvscore
