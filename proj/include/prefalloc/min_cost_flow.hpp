// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Min-cost flow by successive shortest augmenting paths with Johnson
// potentials. Arc costs must be nonnegative when added; residual reverse
// arcs are handled by the potentials.

#ifndef PREFALLOC_MIN_COST_FLOW_HPP_
#define PREFALLOC_MIN_COST_FLOW_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace prefalloc {

class MinCostFlow {
 public:
  using Flow = std::int64_t;
  using Cost = std::int64_t;

  struct Arc {
    int to;
    int rev;  // index of the reverse arc in adjacency_[to]
    Flow capacity;
    Cost cost;
  };

  explicit MinCostFlow(int num_nodes) : adjacency_(num_nodes) {}

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }

  // Returns a handle usable with flow_on().
  std::pair<int, int> AddArc(int from, int to, Flow capacity, Cost cost) {
    if (cost < 0) throw std::invalid_argument("negative arc cost");
    const int fwd = static_cast<int>(adjacency_[from].size());
    const int bwd = static_cast<int>(adjacency_[to].size()) + (from == to ? 1 : 0);
    adjacency_[from].push_back({to, bwd, capacity, cost});
    adjacency_[to].push_back({from, fwd, 0, -cost});
    return {from, fwd};
  }

  // Pushes up to `limit` units from `source` to `sink` along cheapest
  // paths. Returns {flow sent, total cost}.
  std::pair<Flow, Cost> Solve(int source, int sink,
                              Flow limit = std::numeric_limits<Flow>::max()) {
    const int n = num_nodes();
    constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
    std::vector<Cost> potential(n, 0);
    std::vector<Cost> dist(n);
    std::vector<int> prev_node(n);
    std::vector<int> prev_arc(n);
    Flow flow = 0;
    Cost cost = 0;
    using Entry = std::pair<Cost, int>;
    while (flow < limit) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(prev_node.begin(), prev_node.end(), -1);
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
      dist[source] = 0;
      heap.emplace(0, source);
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[u]) continue;
        const auto& arcs = adjacency_[u];
        for (int k = 0; k < static_cast<int>(arcs.size()); ++k) {
          const Arc& arc = arcs[k];
          if (arc.capacity <= 0) continue;
          const Cost nd = d + arc.cost + potential[u] - potential[arc.to];
          if (nd < dist[arc.to]) {
            dist[arc.to] = nd;
            prev_node[arc.to] = u;
            prev_arc[arc.to] = k;
            heap.emplace(nd, arc.to);
          }
        }
      }
      if (dist[sink] >= kInf) break;
      for (int v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      Flow push = limit - flow;
      for (int v = sink; v != source; v = prev_node[v]) {
        push = std::min(push, adjacency_[prev_node[v]][prev_arc[v]].capacity);
      }
      for (int v = sink; v != source; v = prev_node[v]) {
        Arc& arc = adjacency_[prev_node[v]][prev_arc[v]];
        arc.capacity -= push;
        adjacency_[v][arc.rev].capacity += push;
      }
      flow += push;
      cost += push * (potential[sink] - potential[source]);
    }
    return {flow, cost};
  }

  // Flow currently carried by the arc returned from AddArc.
  Flow flow_on(std::pair<int, int> handle) const {
    const Arc& arc = adjacency_[handle.first][handle.second];
    return adjacency_[arc.to][arc.rev].capacity;
  }

  const std::vector<Arc>& arcs(int node) const { return adjacency_[node]; }

 private:
  std::vector<std::vector<Arc>> adjacency_;
};

}  // namespace prefalloc

#endif  // PREFALLOC_MIN_COST_FLOW_HPP_
