#include "sforge/euclidean_oracle.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "sforge/errors.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

namespace {

// Dijkstra over a small local adjacency list, abandoning any branch
// beyond `limit`. Returns dist(src, dst) or kInf if above limit.
double bounded_dist(const std::vector<std::vector<std::pair<int, double>>>& adj,
                    int src, int dst, double limit) {
  const size_t n = adj.size();
  std::vector<double> dist(n, kInf);
  std::priority_queue<std::pair<double, int>,
                      std::vector<std::pair<double, int>>,
                      std::greater<std::pair<double, int>>>
      heap;
  dist[static_cast<size_t>(src)] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(v)]) continue;
    if (v == dst) return d;
    if (d > limit) return kInf;
    for (auto [nbr, w] : adj[static_cast<size_t>(v)]) {
      double nd = d + w;
      if (nd < dist[static_cast<size_t>(nbr)] && nd <= limit) {
        dist[static_cast<size_t>(nbr)] = nd;
        heap.push({nd, nbr});
      }
    }
  }
  return dist[static_cast<size_t>(dst)] <= limit
             ? dist[static_cast<size_t>(dst)]
             : kInf;
}

}  // namespace

Subgraph greedy_spanner(const WeightedGraph& host,
                        const std::vector<int>& subset, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw input_error("greedy_spanner needs epsilon in (0,1)");
  const int k = static_cast<int>(subset.size());
  std::vector<int> local(static_cast<size_t>(host.vertex_count()), -1);
  for (int i = 0; i < k; ++i) local[static_cast<size_t>(subset[static_cast<size_t>(i)])] = i;

  struct Cand {
    double w;
    int u, v;  // local indices, u < v by host id
    int edge_id;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      int a = subset[static_cast<size_t>(i)];
      int b = subset[static_cast<size_t>(j)];
      int id = host.find_edge(a, b);
      if (id < 0) continue;
      cands.push_back({host.edge(id).w, std::min(a, b), std::max(a, b), id});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    return std::tie(x.w, x.u, x.v, x.edge_id) <
           std::tie(y.w, y.u, y.v, y.edge_id);
  });

  std::vector<std::vector<std::pair<int, double>>> adj(
      static_cast<size_t>(k));
  Subgraph out;
  for (const Cand& c : cands) {
    int lu = local[static_cast<size_t>(c.u)];
    int lv = local[static_cast<size_t>(c.v)];
    double limit = (1.0 + epsilon) * c.w;
    double cur = bounded_dist(adj, lu, lv, limit);
    if (cur > limit) {
      out.add(c.edge_id);
      adj[static_cast<size_t>(lu)].push_back({lv, c.w});
      adj[static_cast<size_t>(lv)].push_back({lu, c.w});
    }
  }
  return out;
}

EuclideanOracle::EuclideanOracle(PointSet ps)
    : points_(std::move(ps)), host_(complete_graph(points_)) {}

Subgraph EuclideanOracle::query(const OracleQuery& q) const {
  validate_query(q, host_.vertex_count());
  Subgraph spanner = greedy_spanner(host_, q.terminals, q.epsilon);
  Subgraph out;
  for (int id : spanner.edge_ids)
    if (host_.edge(id).w < 2.0 * q.ell) out.add(id);
  return out;
}

}  // namespace sforge
