#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "scorectl/errors.hpp"

namespace scorectl {

class FlowNetwork {
 public:
  struct Edge {
    std::size_t from, to;
    std::int64_t capacity;
    std::int64_t cost;
  };

  explicit FlowNetwork(std::size_t nodes) : nodes_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t capacity, std::int64_t cost = 0) {
    if (from >= nodes_ || to >= nodes_) throw DimensionError("flow edge endpoint out of range");
    if (capacity < 0) throw DomainError("negative edge capacity");
    if (cost < 0) throw DomainError("negative edge cost");
    edges_.push_back({from, to, capacity, cost});
    return edges_.size() - 1;
  }

  std::size_t nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  std::size_t nodes_;
  std::vector<Edge> edges_;
};

struct FlowResult {
  std::int64_t value = 0;
  std::int64_t cost = 0;
  std::vector<std::int64_t> flow;  // per edge, in insertion order
};

// Successive shortest paths with Bellman-Ford on the residual graph. Pushes
// up to `limit` units from source to sink at minimum cost.
inline FlowResult min_cost_flow(const FlowNetwork& net, std::size_t source, std::size_t sink,
                                std::int64_t limit = std::numeric_limits<std::int64_t>::max()) {
  struct Arc {
    std::size_t to;
    std::int64_t cap;
    std::int64_t cost;
    std::size_t rev;
  };
  const std::size_t n = net.nodes();
  std::vector<std::vector<Arc>> g(n);
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (const auto& e : net.edges()) {
    where.emplace_back(e.from, g[e.from].size());
    g[e.from].push_back({e.to, e.capacity, e.cost, g[e.to].size()});
    g[e.to].push_back({e.from, 0, -e.cost, g[e.from].size() - 1});
  }
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  FlowResult res;
  while (res.value < limit) {
    std::vector<std::int64_t> dist(n, kInf);
    std::vector<std::size_t> prev_node(n), prev_arc(n);
    dist[source] = 0;
    for (std::size_t it = 0; it < n; ++it) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == kInf) continue;
        for (std::size_t a = 0; a < g[u].size(); ++a) {
          const auto& arc = g[u][a];
          if (arc.cap > 0 && dist[u] + arc.cost < dist[arc.to]) {
            dist[arc.to] = dist[u] + arc.cost;
            prev_node[arc.to] = u;
            prev_arc[arc.to] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[sink] == kInf) break;
    std::int64_t push = limit - res.value;
    for (std::size_t v = sink; v != source; v = prev_node[v]) push = std::min(push, g[prev_node[v]][prev_arc[v]].cap);
    for (std::size_t v = sink; v != source; v = prev_node[v]) {
      auto& arc = g[prev_node[v]][prev_arc[v]];
      arc.cap -= push;
      g[v][arc.rev].cap += push;
    }
    res.value += push;
    res.cost += push * dist[sink];
  }
  for (std::size_t i = 0; i < net.edges().size(); ++i)
    res.flow.push_back(net.edges()[i].capacity - g[where[i].first][where[i].second].cap);
  return res;
}

}  // namespace scorectl
