#include "sforge/mst.hpp"

#include <algorithm>
#include <tuple>

namespace sforge {

DisjointSets::DisjointSets(int n)
    : parent_(static_cast<size_t>(n)), size_(static_cast<size_t>(n), 1), sets_(n) {
  for (int i = 0; i < n; ++i) parent_[static_cast<size_t>(i)] = i;
}

int DisjointSets::find(int x) {
  while (parent_[static_cast<size_t>(x)] != x) {
    parent_[static_cast<size_t>(x)] =
        parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
    x = parent_[static_cast<size_t>(x)];
  }
  return x;
}

bool DisjointSets::unite(int x, int y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[static_cast<size_t>(x)] < size_[static_cast<size_t>(y)])
    std::swap(x, y);
  parent_[static_cast<size_t>(y)] = x;
  size_[static_cast<size_t>(x)] += size_[static_cast<size_t>(y)];
  --sets_;
  return true;
}

Subgraph minimum_spanning_forest(const WeightedGraph& g,
                                 const std::vector<int>& edge_ids) {
  std::vector<int> order = edge_ids;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Edge& ea = g.edge(a);
    const Edge& eb = g.edge(b);
    int au = std::min(ea.u, ea.v), av = std::max(ea.u, ea.v);
    int bu = std::min(eb.u, eb.v), bv = std::max(eb.u, eb.v);
    return std::tie(ea.w, au, av, a) < std::tie(eb.w, bu, bv, b);
  });
  DisjointSets ds(g.vertex_count());
  Subgraph f;
  for (int id : order) {
    const Edge& e = g.edge(id);
    if (ds.unite(e.u, e.v)) f.add(id);
  }
  return f;
}

Subgraph minimum_spanning_forest(const WeightedGraph& g) {
  std::vector<int> all(g.edges().size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return minimum_spanning_forest(g, all);
}

}  // namespace sforge
