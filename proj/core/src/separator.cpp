#include "sforge/separator.hpp"

#include <algorithm>

#include "sforge/errors.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

std::vector<int> SeparatorFamily::all_vertices() const {
  std::vector<int> vs;
  for (const auto& level : levels)
    for (const auto& path : level) vs.insert(vs.end(), path.begin(), path.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

int max_component_without(const WeightedGraph& g,
                          const std::vector<int>& removed) {
  std::vector<bool> gone(static_cast<size_t>(g.vertex_count()), false);
  for (int v : removed) gone[static_cast<size_t>(v)] = true;
  std::vector<bool> seen(static_cast<size_t>(g.vertex_count()), false);
  int worst = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (gone[static_cast<size_t>(s)] || seen[static_cast<size_t>(s)]) continue;
    int count = 0;
    stack.push_back(s);
    seen[static_cast<size_t>(s)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++count;
      for (auto [nbr, id] : g.neighbors(v)) {
        if (gone[static_cast<size_t>(nbr)] || seen[static_cast<size_t>(nbr)])
          continue;
        seen[static_cast<size_t>(nbr)] = true;
        stack.push_back(nbr);
      }
    }
    worst = std::max(worst, count);
  }
  return worst;
}

SeparatorFamily TreeCentroidProvider::separate(const WeightedGraph& g) const {
  if (!g.is_tree()) throw input_error("centroid provider needs a tree");
  const int n = g.vertex_count();
  if (n < 2) throw input_error("separator needs at least 2 vertices");

  // Iterative post-order subtree sizes from root 0.
  std::vector<int> parent(static_cast<size_t>(n), -1);
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  std::vector<int> stack = {0};
  std::vector<bool> seen(static_cast<size_t>(n), false);
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto [nbr, id] : g.neighbors(v)) {
      if (seen[static_cast<size_t>(nbr)]) continue;
      seen[static_cast<size_t>(nbr)] = true;
      parent[static_cast<size_t>(nbr)] = v;
      stack.push_back(nbr);
    }
  }
  std::vector<int> size(static_cast<size_t>(n), 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[static_cast<size_t>(*it)] >= 0)
      size[static_cast<size_t>(parent[static_cast<size_t>(*it)])] +=
          size[static_cast<size_t>(*it)];

  int best = -1, best_heavy = n + 1;
  for (int v = 0; v < n; ++v) {
    int heavy = n - size[static_cast<size_t>(v)];
    for (auto [nbr, id] : g.neighbors(v))
      if (parent[static_cast<size_t>(nbr)] == v)
        heavy = std::max(heavy, size[static_cast<size_t>(nbr)]);
    if (heavy < best_heavy || (heavy == best_heavy && v < best)) {
      best = v;
      best_heavy = heavy;
    }
  }
  SeparatorFamily fam;
  fam.levels = {{{best}}};
  fam.max_component = max_component_without(g, {best});
  fam.balance = static_cast<double>(fam.max_component) / n;
  return fam;
}

SeparatorFamily SptCycleProvider::separate(const WeightedGraph& g) const {
  const int n = g.vertex_count();
  if (n < 2) throw input_error("separator needs at least 2 vertices");
  if (!g.is_connected()) throw input_error("separator needs a connected graph");

  // (a) best single vertex
  int a_vertex = 0;
  int a_worst = n + 1;
  for (int v = 0; v < n; ++v) {
    int worst = max_component_without(g, {v});
    if (worst < a_worst) {
      a_worst = worst;
      a_vertex = v;
    }
  }

  // (b) the single vertex plus the best vertex of the residual
  int b_vertex = -1;
  int b_worst = n + 1;
  for (int w = 0; w < n; ++w) {
    if (w == a_vertex) continue;
    int worst = max_component_without(g, {a_vertex, w});
    if (worst < b_worst) {
      b_worst = worst;
      b_vertex = w;
    }
  }

  // (c) root-path pair of the best non-tree edge of an SPT at vertex 0
  ShortestPathTree spt = dijkstra(g, 0);
  int c_edge = -1;
  int c_worst = n + 1;
  std::vector<int> c_removed;
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (spt.parent_edge[static_cast<size_t>(e.u)] == id ||
        spt.parent_edge[static_cast<size_t>(e.v)] == id)
      continue;  // tree edge
    std::vector<int> removed = spt.path_to(e.u);
    std::vector<int> pv = spt.path_to(e.v);
    removed.insert(removed.end(), pv.begin(), pv.end());
    std::sort(removed.begin(), removed.end());
    removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
    int worst = max_component_without(g, removed);
    if (worst < c_worst) {
      c_worst = worst;
      c_edge = id;
      c_removed = removed;
    }
  }

  struct Option {
    int worst;
    int vertices;
    int order;
  };
  std::vector<Option> options = {
      {a_worst, 1, 0},
      {b_worst, 2, 1},
      {c_edge >= 0 ? c_worst : n + 1,
       c_edge >= 0 ? static_cast<int>(c_removed.size()) : n + 1, 2}};
  int pick = 0;
  for (int i = 1; i < 3; ++i) {
    const Option& o = options[static_cast<size_t>(i)];
    const Option& p = options[static_cast<size_t>(pick)];
    if (o.worst < p.worst ||
        (o.worst == p.worst && o.vertices < p.vertices))
      pick = i;
  }

  SeparatorFamily fam;
  if (pick == 0) {
    fam.levels = {{{a_vertex}}};
  } else if (pick == 1) {
    fam.levels = {{{a_vertex}}, {{b_vertex}}};
  } else {
    const Edge& e = g.edge(c_edge);
    fam.levels = {{spt.path_to(e.u), spt.path_to(e.v)}};
  }
  fam.max_component = max_component_without(g, fam.all_vertices());
  fam.balance = static_cast<double>(fam.max_component) / n;
  return fam;
}

}  // namespace sforge
