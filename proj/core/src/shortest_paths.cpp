#include "sforge/shortest_paths.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace sforge {

std::vector<int> ShortestPathTree::path_to(int v) const {
  std::vector<int> out;
  if (!reached(v)) return out;
  for (int x = v; x >= 0; x = parent[static_cast<size_t>(x)]) out.push_back(x);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> ShortestPathTree::path_edges_to(int v) const {
  std::vector<int> out;
  if (!reached(v)) return out;
  for (int x = v; parent[static_cast<size_t>(x)] >= 0;
       x = parent[static_cast<size_t>(x)])
    out.push_back(parent_edge[static_cast<size_t>(x)]);
  std::reverse(out.begin(), out.end());
  return out;
}

ShortestPathTree dijkstra(const WeightedGraph& g, int source) {
  const int n = g.vertex_count();
  if (source < 0 || source >= n)
    throw input_error("dijkstra source out of range");
  ShortestPathTree t;
  t.source = source;
  t.dist.assign(static_cast<size_t>(n), kInf);
  t.parent.assign(static_cast<size_t>(n), -1);
  t.parent_edge.assign(static_cast<size_t>(n), -1);

  using Item = std::pair<double, int>;  // (dist, vertex), min-heap
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  t.dist[static_cast<size_t>(source)] = 0.0;
  pq.emplace(0.0, source);
  std::vector<char> done(static_cast<size_t>(n), 0);

  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[static_cast<size_t>(u)]) continue;
    done[static_cast<size_t>(u)] = 1;
    for (const auto& [v, id] : g.neighbors(u)) {
      if (done[static_cast<size_t>(v)]) continue;
      double nd = d + g.edge(id).w;
      double& cur = t.dist[static_cast<size_t>(v)];
      if (nd < cur) {
        cur = nd;
        t.parent[static_cast<size_t>(v)] = u;
        t.parent_edge[static_cast<size_t>(v)] = id;
        pq.emplace(nd, v);
      } else if (nd == cur) {
        // Deterministic tie break: smaller parent id, then smaller edge id.
        int& p = t.parent[static_cast<size_t>(v)];
        int& pe = t.parent_edge[static_cast<size_t>(v)];
        if (u < p || (u == p && id < pe)) {
          p = u;
          pe = id;
        }
      }
    }
  }
  return t;
}

double path_weight(const WeightedGraph& g, const std::vector<int>& edge_ids) {
  double s = 0.0;
  for (int id : edge_ids) s += g.edge(id).w;
  return s;
}

std::vector<int> path_edges_of(const WeightedGraph& g,
                               const std::vector<int>& vertices) {
  if (vertices.empty()) throw input_error("empty vertex sequence is not a path");
  std::vector<int> ids;
  for (size_t i = 0; i + 1 < vertices.size(); ++i) {
    int id = g.find_edge(vertices[i], vertices[i + 1]);
    if (id < 0)
      throw input_error("vertex sequence is not a path: no edge (" +
                        std::to_string(vertices[i]) + "," +
                        std::to_string(vertices[i + 1]) + ")");
    ids.push_back(id);
  }
  return ids;
}

}  // namespace sforge
