#include "sforge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace sforge {

WeightedGraph::WeightedGraph(int n, bool allow_parallel)
    : allow_parallel_(allow_parallel) {
  if (n < 0) throw input_error("vertex count must be non-negative");
  adj_.resize(static_cast<size_t>(n));
}

int WeightedGraph::add_edge(int u, int v, double w) {
  const int n = vertex_count();
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw input_error("edge endpoint out of range: (" + std::to_string(u) +
                      "," + std::to_string(v) + ") with n=" + std::to_string(n));
  if (u == v) throw input_error("self loop rejected at vertex " + std::to_string(u));
  if (!(w > 0.0) || !std::isfinite(w))
    throw input_error("edge weight must be positive and finite, got " +
                      std::to_string(w));
  if (!allow_parallel_ && find_edge(u, v) >= 0)
    throw input_error("duplicate edge (" + std::to_string(u) + "," +
                      std::to_string(v) + ") in simple graph");
  const int id = edge_count();
  edges_.push_back(Edge{u, v, w});
  adj_[static_cast<size_t>(u)].emplace_back(v, id);
  adj_[static_cast<size_t>(v)].emplace_back(u, id);
  return id;
}

int WeightedGraph::find_edge(int u, int v) const {
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count()) return -1;
  int best = -1;
  for (const auto& [nbr, id] : adj_[static_cast<size_t>(u)]) {
    if (nbr != v) continue;
    if (best < 0 || edges_[static_cast<size_t>(id)].w <
                        edges_[static_cast<size_t>(best)].w)
      best = id;
  }
  return best;
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.w;
  return s;
}

std::vector<int> WeightedGraph::component_ids() const {
  const int n = vertex_count();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    comp[static_cast<size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [nbr, id] : adj_[static_cast<size_t>(v)]) {
        (void)id;
        if (comp[static_cast<size_t>(nbr)] < 0) {
          comp[static_cast<size_t>(nbr)] = next;
          stack.push_back(nbr);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::vector<std::vector<int>> WeightedGraph::components() const {
  std::vector<int> comp = component_ids();
  int count = 0;
  for (int c : comp) count = std::max(count, c + 1);
  std::vector<std::vector<int>> out(static_cast<size_t>(count));
  for (int v = 0; v < vertex_count(); ++v)
    out[static_cast<size_t>(comp[static_cast<size_t>(v)])].push_back(v);
  return out;
}

bool WeightedGraph::is_connected() const {
  if (vertex_count() == 0) return true;
  return components().size() == 1;
}

bool WeightedGraph::is_tree() const {
  return is_connected() && edge_count() == vertex_count() - 1;
}

void Subgraph::add(int id) {
  auto it = std::lower_bound(edge_ids.begin(), edge_ids.end(), id);
  if (it == edge_ids.end() || *it != id) edge_ids.insert(it, id);
}

void Subgraph::add_all(const std::vector<int>& ids) {
  for (int id : ids) add(id);
}

bool Subgraph::contains(int id) const {
  return std::binary_search(edge_ids.begin(), edge_ids.end(), id);
}

double Subgraph::weight(const WeightedGraph& host) const {
  double s = 0.0;
  for (int id : edge_ids) s += host.edge(id).w;
  return s;
}

WeightedGraph Subgraph::materialize(const WeightedGraph& host,
                                    std::vector<int>* edge_map) const {
  WeightedGraph g(host.vertex_count(), true);
  if (edge_map) edge_map->clear();
  for (int id : edge_ids) {
    const Edge& e = host.edge(id);
    g.add_edge(e.u, e.v, e.w);
    if (edge_map) edge_map->push_back(id);
  }
  return g;
}

Subgraph subgraph_union(const Subgraph& a, const Subgraph& b) {
  Subgraph out;
  out.edge_ids.reserve(a.edge_ids.size() + b.edge_ids.size());
  std::set_union(a.edge_ids.begin(), a.edge_ids.end(), b.edge_ids.begin(),
                 b.edge_ids.end(), std::back_inserter(out.edge_ids));
  return out;
}

SubgraphView extract_induced(const WeightedGraph& g,
                             const std::vector<int>& vertices) {
  SubgraphView view;
  view.global_to_local.assign(static_cast<size_t>(g.vertex_count()), -1);
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  view.to_global = sorted;
  for (size_t i = 0; i < sorted.size(); ++i)
    view.global_to_local[static_cast<size_t>(sorted[i])] = static_cast<int>(i);
  view.graph = WeightedGraph(static_cast<int>(sorted.size()), g.allows_parallel());
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    int lu = view.global_to_local[static_cast<size_t>(e.u)];
    int lv = view.global_to_local[static_cast<size_t>(e.v)];
    if (lu < 0 || lv < 0) continue;
    view.graph.add_edge(lu, lv, e.w);
    view.edge_to_global.push_back(id);
  }
  return view;
}

}  // namespace sforge
