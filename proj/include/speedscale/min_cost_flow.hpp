#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace speedscale {

// Successive shortest augmenting paths with Johnson potentials.
// Initial potentials come from Bellman-Ford, so negative arc costs are fine
// as long as the network has no negative cycle. Augmentation stops as soon
// as the cheapest s-t path is no longer strictly negative, which makes
// min_cost_flow() return a min-cost flow of *any* value (profit-maximizing
// flow when profits are encoded as negative costs).
template <typename Flow, typename Cost>
class MinCostFlow {
 public:
  struct Arc {
    int from;
    int to;
    Flow cap;
    Flow flow;
    Cost cost;
  };

  explicit MinCostFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  int add_arc(int from, int to, Flow cap, Cost cost) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, cap, Flow{0}, cost});
    arcs_.push_back({to, from, Flow{0}, Flow{0}, -cost});
    adj_[static_cast<std::size_t>(from)].push_back(id);
    adj_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  const Arc& arc(int id) const { return arcs_[static_cast<std::size_t>(id)]; }
  int node_count() const { return static_cast<int>(adj_.size()); }

  struct Result {
    Flow flow{0};
    Cost cost{0};
    int augmentations = 0;
  };

  /// Augments while the shortest path has cost < -stop_epsilon.
  Result min_cost_flow(int source, int sink, Cost stop_epsilon) {
    const auto n = adj_.size();
    potential_.assign(n, Cost{0});
    bellman_ford(source);

    Result res;
    std::vector<Cost> dist(n);
    std::vector<int> via(n);
    using Item = std::pair<Cost, int>;
    while (true) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      dist[static_cast<std::size_t>(source)] = Cost{0};
      heap.push({Cost{0}, source});
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (int id : adj_[static_cast<std::size_t>(u)]) {
          const Arc& a = arcs_[static_cast<std::size_t>(id)];
          if (a.cap - a.flow <= Flow{0}) continue;
          // Reduced costs are >= 0 up to rounding; clamp the noise.
          Cost rc = a.cost + potential_[static_cast<std::size_t>(u)] - potential_[static_cast<std::size_t>(a.to)];
          if (rc < Cost{0}) rc = Cost{0};
          const Cost nd = d + rc;
          if (nd < dist[static_cast<std::size_t>(a.to)]) {
            dist[static_cast<std::size_t>(a.to)] = nd;
            via[static_cast<std::size_t>(a.to)] = id;
            heap.push({nd, a.to});
          }
        }
      }
      if (via[static_cast<std::size_t>(sink)] < 0) break;
      for (std::size_t v = 0; v < n; ++v)
        if (dist[v] < kInf) potential_[v] += dist[v];

      // true path cost, summed on the original arc costs
      Flow push = std::numeric_limits<Flow>::max();
      Cost path_cost{0};
      for (int v = sink; v != source;) {
        const Arc& a = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])];
        push = std::min(push, a.cap - a.flow);
        path_cost += a.cost;
        v = a.from;
      }
      if (!(path_cost < -stop_epsilon)) break;
      for (int v = sink; v != source;) {
        const int id = via[static_cast<std::size_t>(v)];
        arcs_[static_cast<std::size_t>(id)].flow += push;
        arcs_[static_cast<std::size_t>(id ^ 1)].flow -= push;
        v = arcs_[static_cast<std::size_t>(id)].from;
      }
      res.flow += push;
      res.cost += path_cost * static_cast<Cost>(push);
      ++res.augmentations;
    }
    return res;
  }

 private:
  static constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

  void bellman_ford(int source) {
    const auto n = adj_.size();
    std::vector<Cost> dist(n, kInf);
    dist[static_cast<std::size_t>(source)] = Cost{0};
    for (std::size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (const Arc& a : arcs_) {
        if (a.cap - a.flow <= Flow{0} || dist[static_cast<std::size_t>(a.from)] >= kInf) continue;
        const Cost nd = dist[static_cast<std::size_t>(a.from)] + a.cost;
        if (nd < dist[static_cast<std::size_t>(a.to)]) {
          dist[static_cast<std::size_t>(a.to)] = nd;
          changed = true;
        }
      }
      if (!changed) break;
      if (round + 1 == n) throw std::logic_error("negative cycle in flow network");
    }
    for (std::size_t v = 0; v < n; ++v) potential_[v] = dist[v] < kInf ? dist[v] : Cost{0};
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<Cost> potential_;
};

}  // namespace speedscale
