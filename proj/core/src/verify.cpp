#include "sforge/verify.hpp"

#include <algorithm>

#include "sforge/errors.hpp"
#include "sforge/mst.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

bool StretchReport::all_within(double t, double tol) const {
  return unreachable_pairs == 0 && leq_tol(max_stretch, t, tol);
}

namespace {

StretchReport measure_impl(const WeightedGraph& host, const Subgraph& sub,
                           const std::vector<int>& vertices, double lo,
                           double hi) {
  StretchReport r;
  if (vertices.size() < 2) return r;
  std::vector<int> edge_map;
  WeightedGraph sg = sub.materialize(host, &edge_map);
  for (size_t a = 0; a < vertices.size(); ++a) {
    int u = vertices[a];
    ShortestPathTree in_host = dijkstra(host, u);
    ShortestPathTree in_sub = dijkstra(sg, u);
    for (size_t b = a + 1; b < vertices.size(); ++b) {
      int v = vertices[b];
      double dh = in_host.dist[static_cast<size_t>(v)];
      if (dh >= kInf) continue;
      if (dh < lo || dh > hi) continue;
      ++r.pairs_checked;
      double ds = in_sub.dist[static_cast<size_t>(v)];
      if (ds >= kInf) {
        ++r.unreachable_pairs;
        r.per_pair.push_back({u, v, dh, kInf, kInf});
        if (r.worst_u < 0) {
          r.worst_u = u;
          r.worst_v = v;
          r.worst_d_host = dh;
          r.worst_d_sub = ds;
        }
        continue;
      }
      double ratio = dh > 0.0 ? ds / dh : 1.0;
      r.per_pair.push_back({u, v, dh, ds, ratio});
      if (ratio > r.max_stretch) {
        r.max_stretch = ratio;
        r.worst_u = u;
        r.worst_v = v;
        r.worst_d_host = dh;
        r.worst_d_sub = ds;
      }
    }
  }
  return r;
}

}  // namespace

StretchReport measure_stretch(const WeightedGraph& host, const Subgraph& sub,
                              const std::vector<int>& vertices) {
  return measure_impl(host, sub, vertices, 0.0, kInf);
}

StretchReport measure_stretch_window(const WeightedGraph& host,
                                     const Subgraph& sub,
                                     const std::vector<int>& vertices,
                                     double lo, double hi) {
  return measure_impl(host, sub, vertices, lo, hi);
}

double measure_lightness(const WeightedGraph& host, const Subgraph& spanner,
                         const Subgraph& baseline) {
  double b = baseline.weight(host);
  if (!(b > 0.0)) throw input_error("lightness baseline has zero weight");
  return spanner.weight(host) / b;
}

bool is_closed_walk_cover(const WeightedGraph& host,
                          const std::vector<int>& edge_multiset,
                          const std::vector<int>& vertices) {
  if (edge_multiset.empty()) return vertices.size() <= 1;
  std::vector<int> degree(static_cast<size_t>(host.vertex_count()), 0);
  for (int id : edge_multiset) {
    if (id < 0 || id >= static_cast<int>(host.edges().size())) return false;
    ++degree[static_cast<size_t>(host.edge(id).u)];
    ++degree[static_cast<size_t>(host.edge(id).v)];
  }
  for (int d : degree)
    if (d % 2 != 0) return false;
  DisjointSets ds(host.vertex_count());
  for (int id : edge_multiset) ds.unite(host.edge(id).u, host.edge(id).v);
  int root = -1;
  for (int v = 0; v < host.vertex_count(); ++v) {
    if (degree[static_cast<size_t>(v)] == 0) continue;
    if (root < 0) root = ds.find(v);
    else if (ds.find(v) != root) return false;
  }
  for (int v : vertices) {
    if (v < 0 || v >= host.vertex_count()) return false;
    if (degree[static_cast<size_t>(v)] == 0) return false;
    if (ds.find(v) != root) return false;
  }
  return true;
}

}  // namespace sforge
