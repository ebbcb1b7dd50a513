#include "pvscore/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace pvscore {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const NeighborGraph& g)
      : g_(g),
        pair_left_(g.n_left, kUnmatched),
        pair_right_(g.n_right, kUnmatched),
        dist_(g.n_left, kInf),
        next_edge_(g.n_left, 0) {}

  Matching run() {
    std::size_t cardinality = 0;
    while (layer()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (std::size_t u = 0; u < g_.n_left; ++u) {
        if (pair_left_[u] == kUnmatched && augment(u)) ++cardinality;
      }
    }
    return Matching{std::move(pair_left_), std::move(pair_right_), cardinality};
  }

 private:
  // BFS from all free left vertices; true if some free right vertex is reachable.
  bool layer() {
    std::deque<std::size_t> queue;
    for (std::size_t u = 0; u < g_.n_left; ++u) {
      if (pair_left_[u] == kUnmatched) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : g_.adjacency[u]) {
        const std::size_t w = pair_right_[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  // Iterative layered DFS; flips the path on success.
  bool augment(std::size_t root) {
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      const std::size_t u = stack_.back();
      const auto& adj = g_.adjacency[u];
      if (next_edge_[u] == adj.size()) {
        dist_[u] = kInf;
        stack_.pop_back();
        if (!stack_.empty()) ++next_edge_[stack_.back()];
        continue;
      }
      const std::size_t v = adj[next_edge_[u]];
      const std::size_t w = pair_right_[v];
      if (w == kUnmatched) {
        for (std::size_t x : stack_) {
          const std::size_t y = g_.adjacency[x][next_edge_[x]];
          pair_left_[x] = y;
          pair_right_[y] = x;
        }
        return true;
      }
      if (dist_[w] != kInf && dist_[w] == dist_[u] + 1) {
        stack_.push_back(w);
      } else {
        ++next_edge_[u];
      }
    }
    return false;
  }

  const NeighborGraph& g_;
  std::vector<std::size_t> pair_left_;
  std::vector<std::size_t> pair_right_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_edge_;
  std::vector<std::size_t> stack_;
};

void validate_inputs(const PointSet& s1, const PointSet& s2, double epsilon) {
  detail::require_nonempty(s1, "first sample");
  detail::require_nonempty(s2, "second sample");
  detail::require_same_dim(s1, s2);
  detail::require_positive_epsilon(epsilon);
}

std::vector<std::size_t> sorted_order(const PointSet& s) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s.at(a, 0) < s.at(b, 0); });
  return order;
}

// Two-pointer sweep over sorted values; positions equal to skip_x / skip_y are
// ignored. Returns the matching cardinality.
std::size_t sweep_cardinality(const std::vector<double>& xs, const std::vector<double>& ys,
                              double epsilon, std::size_t skip_x, std::size_t skip_y) {
  std::size_t i = 0, j = 0, matched = 0;
  while (true) {
    if (i == skip_x) ++i;
    if (j == skip_y) ++j;
    if (i >= xs.size() || j >= ys.size()) break;
    const double x = xs[i], y = ys[j];
    if (std::abs(x - y) <= epsilon) {
      ++matched;
      ++i;
      ++j;
    } else if (x < y) {
      ++i;
    } else {
      ++j;
    }
  }
  return matched;
}

PvEstimate make_estimate(const Matching& mt, double epsilon, Metric metric) {
  PvEstimate est;
  est.n = mt.pair_of_left.size();
  est.m = mt.pair_of_right.size();
  est.epsilon = epsilon;
  est.metric = metric;
  for (std::size_t i = 0; i < est.n; ++i) {
    if (mt.pair_of_left[i] == kUnmatched) {
      est.unmatched_left.push_back(i);
    } else {
      est.matched_pairs.emplace_back(i, mt.pair_of_left[i]);
    }
  }
  for (std::size_t j = 0; j < est.m; ++j) {
    if (mt.pair_of_right[j] == kUnmatched) est.unmatched_right.push_back(j);
  }
  est.s_w = est.unmatched_left.size();
  est.s_v = est.unmatched_right.size();
  est.value = pv_from_cardinality(mt.cardinality, est.n, est.m);
  return est;
}

}  // namespace

Matching maximum_matching(const NeighborGraph& graph) {
  if (graph.adjacency.size() != graph.n_left) {
    throw std::invalid_argument("maximum_matching: adjacency size does not match n_left");
  }
  for (const auto& adj : graph.adjacency) {
    for (std::size_t j : adj) {
      if (j >= graph.n_right) throw std::invalid_argument("maximum_matching: right index out of range");
    }
  }
  return HopcroftKarp(graph).run();
}

Matching sweep_matching_1d(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric) {
  validate_inputs(s1, s2, epsilon);
  if (s1.dim() != 1) throw std::invalid_argument("sweep_matching_1d: samples must be 1-D");
  (void)metric;  // all supported metrics reduce to |x - y| in one dimension
  const auto ox = sorted_order(s1);
  const auto oy = sorted_order(s2);
  Matching mt{std::vector<std::size_t>(s1.size(), kUnmatched),
              std::vector<std::size_t>(s2.size(), kUnmatched), 0};
  std::size_t i = 0, j = 0;
  while (i < ox.size() && j < oy.size()) {
    const double x = s1.at(ox[i], 0), y = s2.at(oy[j], 0);
    if (std::abs(x - y) <= epsilon) {
      mt.pair_of_left[ox[i]] = oy[j];
      mt.pair_of_right[oy[j]] = ox[i];
      ++mt.cardinality;
      ++i;
      ++j;
    } else if (x < y) {
      ++i;
    } else {
      ++j;
    }
  }
  return mt;
}

double pv_from_cardinality(std::size_t cardinality, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("pv_from_cardinality: empty sample");
  if (cardinality > std::min(n, m)) {
    throw std::invalid_argument("pv_from_cardinality: cardinality exceeds sample size");
  }
  const double unmatched_left = static_cast<double>(n - cardinality);
  const double unmatched_right = static_cast<double>(m - cardinality);
  return 0.5 * (unmatched_left / static_cast<double>(n) + unmatched_right / static_cast<double>(m));
}

PvEstimate pv_hat(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric) {
  validate_inputs(s1, s2, epsilon);
  if (s1.dim() == 1) return make_estimate(sweep_matching_1d(s1, s2, epsilon, metric), epsilon, metric);
  return pv_hat_graph(s1, s2, epsilon, metric);
}

PvEstimate pv_hat_graph(const PointSet& s1, const PointSet& s2, double epsilon, Metric metric) {
  validate_inputs(s1, s2, epsilon);
  const NeighborGraph g = build_neighbor_graph(s1, s2, epsilon, metric);
  return make_estimate(maximum_matching(g), epsilon, metric);
}

EssentialVertices essential_vertices(const NeighborGraph& graph, const Matching& matching) {
  const std::size_t n = graph.n_left, m = graph.n_right;
  std::vector<std::vector<std::size_t>> reverse(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : graph.adjacency[i]) reverse[j].push_back(i);
  }

  // Even alternating paths from free vertices reach exactly the vertices that
  // some maximum matching leaves exposed.
  auto reach = [](std::size_t count, const std::vector<std::size_t>& own_pair,
                  const std::vector<std::vector<std::size_t>>& adj,
                  const std::vector<std::size_t>& other_pair) {
    std::vector<bool> seen(count, false);
    std::deque<std::size_t> queue;
    for (std::size_t u = 0; u < count; ++u) {
      if (own_pair[u] == kUnmatched) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj[u]) {
        const std::size_t w = other_pair[v];
        if (w != kUnmatched && !seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    std::vector<bool> essential(count);
    for (std::size_t u = 0; u < count; ++u) essential[u] = !seen[u];
    return essential;
  };

  return EssentialVertices{
      reach(n, matching.pair_of_left, graph.adjacency, matching.pair_of_right),
      reach(m, matching.pair_of_right, reverse, matching.pair_of_left)};
}

std::vector<double> leave_one_out_pv(const PointSet& s1, const PointSet& s2, double epsilon,
                                     Metric metric) {
  validate_inputs(s1, s2, epsilon);
  const std::size_t n = s1.size(), m = s2.size();
  if (n < 2 || m < 2) throw std::invalid_argument("leave_one_out_pv: need at least 2 points per sample");
  std::vector<double> out(n + m);

  if (s1.dim() == 1) {
    const auto ox = sorted_order(s1);
    const auto oy = sorted_order(s2);
    std::vector<double> xs(n), ys(m);
    std::vector<std::size_t> pos_x(n), pos_y(m);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] = s1.at(ox[k], 0);
      pos_x[ox[k]] = k;
    }
    for (std::size_t k = 0; k < m; ++k) {
      ys[k] = s2.at(oy[k], 0);
      pos_y[oy[k]] = k;
    }
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = pv_from_cardinality(sweep_cardinality(xs, ys, epsilon, pos_x[i], kUnmatched), n - 1, m);
    }
    for (std::size_t j = 0; j < m; ++j) {
      out[n + j] =
          pv_from_cardinality(sweep_cardinality(xs, ys, epsilon, kUnmatched, pos_y[j]), n, m - 1);
    }
    return out;
  }

  const NeighborGraph g = build_neighbor_graph(s1, s2, epsilon, metric);
  const Matching mt = maximum_matching(g);
  const EssentialVertices ess = essential_vertices(g, mt);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = pv_from_cardinality(mt.cardinality - (ess.left[i] ? 1 : 0), n - 1, m);
  }
  for (std::size_t j = 0; j < m; ++j) {
    out[n + j] = pv_from_cardinality(mt.cardinality - (ess.right[j] ? 1 : 0), n, m - 1);
  }
  return out;
}

}  // namespace pvscore
