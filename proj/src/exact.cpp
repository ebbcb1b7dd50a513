#include "pvscore/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pvscore {

namespace {

constexpr double kMassTolerance = 1e-9;
constexpr double kFlowTolerance = 1e-15;

// Dinic's max-flow on a small dense-ish network with real capacities.
class Dinic {
 public:
  explicit Dinic(std::size_t nodes) : graph_(nodes), level_(nodes), next_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, double capacity) {
    graph_[from].push_back(edges_.size());
    edges_.push_back({to, capacity});
    graph_[to].push_back(edges_.size());
    edges_.push_back({from, 0.0});
    return edges_.size() - 2;
  }

  double max_flow(std::size_t source, std::size_t sink) {
    double total = 0.0;
    while (build_levels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        const double pushed = push(source, sink, std::numeric_limits<double>::infinity());
        if (pushed <= kFlowTolerance) break;
        total += pushed;
      }
    }
    return total;
  }

  // Flow carried by the forward edge `id`.
  double flow_on(std::size_t id) const { return edges_[id ^ 1].capacity; }

 private:
  struct Edge {
    std::size_t to;
    double capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{source};
    level_[source] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t id : graph_[u]) {
        const Edge& e = edges_[id];
        if (e.capacity > kFlowTolerance && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // Network depth is 3, so recursion stays shallow.
  double push(std::size_t u, std::size_t sink, double limit) {
    if (u == sink) return limit;
    for (std::size_t& k = next_[u]; k < graph_[u].size(); ++k) {
      const std::size_t id = graph_[u][k];
      Edge& e = edges_[id];
      if (e.capacity <= kFlowTolerance || level_[e.to] != level_[u] + 1) continue;
      const double got = push(e.to, sink, std::min(limit, e.capacity));
      if (got > kFlowTolerance) {
        e.capacity -= got;
        edges_[id ^ 1].capacity += got;
        return got;
      }
    }
    return 0.0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> graph_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

void check_pair(const DiscreteDist& mu1, const DiscreteDist& mu2, double epsilon) {
  mu1.validate();
  mu2.validate();
  detail::require_same_dim(mu1.support, mu2.support);
  detail::require_positive_epsilon(epsilon);
}

double snap_box_count(double inverse) {
  // 1/nu within rounding of an integer counts as that integer.
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) <= 1e-9 * std::max(1.0, rounded)) return rounded;
  return std::ceil(inverse);
}

}  // namespace

void DiscreteDist::validate() const {
  if (support.empty()) throw std::invalid_argument("DiscreteDist: empty support");
  if (mass.size() != support.size()) {
    throw std::invalid_argument("DiscreteDist: mass and support sizes differ");
  }
  double total = 0.0;
  for (double w : mass) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("DiscreteDist: masses must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("DiscreteDist: masses sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

DiscreteDist DiscreteDist::uniform(const PointSet& points) {
  detail::require_nonempty(points, "support");
  return DiscreteDist{points, std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size()))};
}

DiscretePvResult pv_discrete(const DiscreteDist& mu1, const DiscreteDist& mu2, double epsilon,
                             Metric metric) {
  check_pair(mu1, mu2, epsilon);
  const std::size_t n = mu1.support.size(), m = mu2.support.size();
  const std::size_t source = n + m, sink = n + m + 1;
  Dinic net(n + m + 2);
  for (std::size_t i = 0; i < n; ++i) net.add_edge(source, i, mu1.mass[i]);
  for (std::size_t j = 0; j < m; ++j) net.add_edge(n + j, sink, mu2.mass[j]);

  const NeighborGraph g = build_neighbor_graph(mu1.support, mu2.support, epsilon, metric,
                                               GraphBuild::BruteForce);
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> middle;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : g.adjacency[i]) {
      middle.push_back({net.add_edge(i, n + j, 2.0), {i, j}});
    }
  }
  net.max_flow(source, sink);

  DiscretePvResult result;
  TransportPlan& plan = result.plan;
  plan.leftover_left = mu1.mass;
  plan.leftover_right = mu2.mass;
  for (const auto& [id, ij] : middle) {
    const double f = net.flow_on(id);
    if (f > kFlowTolerance) {
      plan.flow[ij] = f;
      plan.leftover_left[ij.first] -= f;
      plan.leftover_right[ij.second] -= f;
    }
  }
  for (double& w : plan.leftover_left) w = std::max(w, 0.0);
  for (double& v : plan.leftover_right) v = std::max(v, 0.0);
  plan.objective = 0.5 * std::accumulate(plan.leftover_left.begin(), plan.leftover_left.end(), 0.0) +
                   0.5 * std::accumulate(plan.leftover_right.begin(), plan.leftover_right.end(), 0.0);
  result.value = std::clamp(plan.objective, 0.0, 1.0);
  return result;
}

double pv_discrete_bruteforce(const DiscreteDist& mu1, const DiscreteDist& mu2, double epsilon,
                              Metric metric) {
  check_pair(mu1, mu2, epsilon);
  if (mu1.support.size() + mu2.support.size() > kBruteForceMaxSupport) {
    throw std::invalid_argument("pv_discrete_bruteforce: combined support exceeds " +
                                std::to_string(kBruteForceMaxSupport));
  }
  // Enumerate subsets of the smaller side; the cut formula is symmetric.
  const bool swap_sides = mu1.support.size() > mu2.support.size();
  const DiscreteDist& a = swap_sides ? mu2 : mu1;
  const DiscreteDist& b = swap_sides ? mu1 : mu2;
  const std::size_t na = a.support.size(), nb = b.support.size();

  std::vector<std::uint32_t> neighbors(na, 0);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (distance(a.support.row(i), b.support.row(j), metric) <= epsilon) {
        neighbors[i] |= (1u << j);
      }
    }
  }
  double best_cut = std::numeric_limits<double>::infinity();
  for (std::uint32_t subset = 0; subset < (1u << na); ++subset) {
    double cut = 0.0;
    std::uint32_t reached = 0;
    for (std::size_t i = 0; i < na; ++i) {
      if (subset & (1u << i)) {
        reached |= neighbors[i];
      } else {
        cut += a.mass[i];
      }
    }
    for (std::size_t j = 0; j < nb; ++j) {
      if (reached & (1u << j)) cut += b.mass[j];
    }
    best_cut = std::min(best_cut, cut);
  }
  return std::clamp(1.0 - best_cut, 0.0, 1.0);
}

DiscreteDist discretize(const PointSet& s, double nu) {
  detail::require_nonempty(s, "sample");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("discretize: nu must be positive");
  const std::size_t d = s.dim();
  const double boxes = snap_box_count(1.0 / nu);
  const auto last = static_cast<std::int64_t>(boxes) - 1;

  std::map<std::vector<std::int64_t>, std::size_t> counts;
  std::vector<std::int64_t> key(d);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double v = s.at(i, k);
      if (v < 0.0 || v > 1.0) {
        throw std::invalid_argument("discretize: point " + std::to_string(i) + " lies outside [0,1]^d");
      }
      key[k] = std::min(static_cast<std::int64_t>(std::floor(v / nu)), last);
    }
    ++counts[key];
  }

  std::vector<double> centers;
  std::vector<double> mass;
  centers.reserve(counts.size() * d);
  for (const auto& [box, count] : counts) {
    for (std::int64_t idx : box) centers.push_back((static_cast<double>(idx) + 0.5) * nu);
    mass.push_back(static_cast<double>(count) / static_cast<double>(s.size()));
  }
  return DiscreteDist{PointSet(std::move(centers), d), std::move(mass)};
}

}  // namespace pvscore
