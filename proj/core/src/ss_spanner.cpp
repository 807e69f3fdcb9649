#include "sforge/ss_spanner.hpp"

#include <algorithm>
#include <cmath>

#include "sforge/errors.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

double AnchoredPathSet::side_weight(const WeightedGraph& g, int side) const {
  double total = 0.0;
  const int n = static_cast<int>(anchor_pos.size());
  for (int s = 0; s < n; ++s) {
    if (side < 0 && s > y0_slot) continue;
    if (side > 0 && s < y0_slot) continue;
    for (int id : paths[static_cast<size_t>(s)])
      total += g.edge(id).w;
  }
  return total;
}

double AnchoredPathSet::side_span(int side) const {
  if (anchor_pos.empty()) return 0.0;
  int y0_pos = anchor_pos[static_cast<size_t>(y0_slot)];
  int end_pos = side < 0 ? anchor_pos.front() : anchor_pos.back();
  return std::abs(prefix[static_cast<size_t>(end_pos)] -
                  prefix[static_cast<size_t>(y0_pos)]);
}

Subgraph AnchoredPathSet::all_edges() const {
  Subgraph s;
  for (const auto& p : paths) s.add_all(p);
  return s;
}

std::vector<double> verify_shortest_path(const WeightedGraph& g,
                                         const std::vector<int>& path) {
  if (path.empty()) throw input_error("empty path");
  std::vector<double> prefix(path.size(), 0.0);
  for (size_t i = 1; i < path.size(); ++i) {
    int id = g.find_edge(path[i - 1], path[i]);
    if (id < 0)
      throw input_error("path edge " + std::to_string(path[i - 1]) + "-" +
                        std::to_string(path[i]) + " missing");
    prefix[i] = prefix[i - 1] + g.edge(id).w;
  }
  ShortestPathTree spt = dijkstra(g, path[0]);
  for (size_t i = 0; i < path.size(); ++i) {
    double d = spt.dist[static_cast<size_t>(path[i])];
    if (!close_tol(d, prefix[i], kRelTol))
      throw contract_violation("base path is not a shortest path at vertex " +
                               std::to_string(path[i]));
  }
  return prefix;
}

AnchoredPathSet ss_spanner(const WeightedGraph& g,
                           const std::vector<int>& base_path, int source,
                           double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw input_error("ss_spanner needs epsilon in (0,1)");
  if (source < 0 || source >= g.vertex_count())
    throw input_error("ss_spanner source out of range");

  AnchoredPathSet out;
  out.source = source;
  out.base_path = base_path;
  if (out.base_path.size() >= 2 && out.base_path.back() < out.base_path.front())
    std::reverse(out.base_path.begin(), out.base_path.end());
  out.prefix = verify_shortest_path(g, out.base_path);

  ShortestPathTree spt = dijkstra(g, source);
  const int m = static_cast<int>(out.base_path.size());
  int y0 = -1;
  double best = kInf;
  for (int i = 0; i < m; ++i) {
    double d = spt.dist[static_cast<size_t>(out.base_path[static_cast<size_t>(i)])];
    if (d < best) {
      best = d;
      y0 = i;
    }
  }
  if (y0 < 0) throw input_error("source cannot reach the base path");
  out.R = best;

  auto dist_to = [&](int pos) {
    return spt.dist[static_cast<size_t>(out.base_path[static_cast<size_t>(pos)])];
  };
  auto d_p = [&](int a, int b) {
    return std::abs(out.prefix[static_cast<size_t>(a)] -
                    out.prefix[static_cast<size_t>(b)]);
  };

  std::vector<int> right, left;
  if (out.R > 0.0) {
    int prev = y0;
    for (int i = y0 + 1; i < m; ++i) {
      if ((1.0 + epsilon) * dist_to(i) < dist_to(prev) + d_p(prev, i)) {
        right.push_back(i);
        prev = i;
      }
    }
    prev = y0;
    for (int i = y0 - 1; i >= 0; --i) {
      if ((1.0 + epsilon) * dist_to(i) < dist_to(prev) + d_p(prev, i)) {
        left.push_back(i);
        prev = i;
      }
    }
  }

  for (auto it = left.rbegin(); it != left.rend(); ++it)
    out.anchor_pos.push_back(*it);
  out.y0_slot = static_cast<int>(out.anchor_pos.size());
  out.anchor_pos.push_back(y0);
  for (int i : right) out.anchor_pos.push_back(i);

  out.paths.reserve(out.anchor_pos.size());
  for (int pos : out.anchor_pos)
    out.paths.push_back(spt.path_edges_to(
        out.base_path[static_cast<size_t>(pos)]));
  return out;
}

Subgraph walk_to_path_spanner(const WeightedGraph& g,
                              const std::vector<int>& walk,
                              const std::vector<int>& base_path,
                              double epsilon) {
  if (walk.empty()) throw input_error("empty walk");
  std::vector<double> walk_prefix(walk.size(), 0.0);
  for (size_t i = 1; i < walk.size(); ++i) {
    int id = g.find_edge(walk[i - 1], walk[i]);
    if (id < 0)
      throw input_error("walk edge " + std::to_string(walk[i - 1]) + "-" +
                        std::to_string(walk[i]) + " missing");
    walk_prefix[i] = walk_prefix[i - 1] + g.edge(id).w;
  }

  std::vector<int> breakpoints;
  breakpoints.push_back(0);
  size_t prev = 0;
  std::vector<double> dist_to_p(walk.size(), 0.0);
  for (size_t i = 0; i < walk.size(); ++i) {
    ShortestPathTree spt = dijkstra(g, walk[i]);
    double best = kInf;
    for (int v : base_path)
      best = std::min(best, spt.dist[static_cast<size_t>(v)]);
    dist_to_p[i] = best;
  }
  for (size_t i = 1; i < walk.size(); ++i) {
    if (walk_prefix[i] - walk_prefix[prev] > epsilon * dist_to_p[i]) {
      breakpoints.push_back(static_cast<int>(i));
      prev = i;
    }
  }

  Subgraph out;
  for (int b : breakpoints) {
    AnchoredPathSet aps =
        ss_spanner(g, base_path, walk[static_cast<size_t>(b)], epsilon);
    out = subgraph_union(out, aps.all_edges());
  }
  return out;
}

}  // namespace sforge
