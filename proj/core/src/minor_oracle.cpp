#include "sforge/minor_oracle.hpp"

#include <algorithm>

#include "sforge/errors.hpp"
#include "sforge/graph_io.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

TreeMinorProvider::TreeMinorProvider(const WeightedGraph& tree)
    : tree_(&tree) {
  if (!tree.is_tree())
    throw input_error("tree minor provider needs a tree host");
}

WeightedGraph TreeMinorProvider::compress(
    const std::vector<int>& terminals) const {
  const WeightedGraph& t = *tree_;
  std::vector<int> ts = normalize_terminals(t, terminals);
  WeightedGraph out(t.vertex_count());
  if (ts.size() <= 1) return out;

  // Minimal spanning subtree: peel non-terminal leaves.
  std::vector<bool> is_terminal(static_cast<size_t>(t.vertex_count()), false);
  for (int v : ts) is_terminal[static_cast<size_t>(v)] = true;
  std::vector<int> degree(static_cast<size_t>(t.vertex_count()), 0);
  std::vector<bool> edge_alive(t.edges().size(), true);
  for (const Edge& e : t.edges()) {
    ++degree[static_cast<size_t>(e.u)];
    ++degree[static_cast<size_t>(e.v)];
  }
  std::vector<int> stack;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (degree[static_cast<size_t>(v)] <= 1 && !is_terminal[static_cast<size_t>(v)])
      stack.push_back(v);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [nbr, id] : t.neighbors(v)) {
      if (!edge_alive[static_cast<size_t>(id)]) continue;
      edge_alive[static_cast<size_t>(id)] = false;
      --degree[static_cast<size_t>(v)];
      --degree[static_cast<size_t>(nbr)];
      if (degree[static_cast<size_t>(nbr)] == 1 &&
          !is_terminal[static_cast<size_t>(nbr)])
        stack.push_back(nbr);
    }
  }

  // Splice out degree-2 non-terminals: walk chains between kept vertices.
  auto kept = [&](int v) {
    return degree[static_cast<size_t>(v)] > 0 &&
           (is_terminal[static_cast<size_t>(v)] ||
            degree[static_cast<size_t>(v)] != 2);
  };
  for (int u = 0; u < t.vertex_count(); ++u) {
    if (!kept(u)) continue;
    for (auto [first_nbr, first_id] : t.neighbors(u)) {
      if (!edge_alive[static_cast<size_t>(first_id)]) continue;
      int prev = u;
      int cur = first_nbr;
      double w = t.edge(first_id).w;
      while (!kept(cur)) {
        int next = -1, next_id = -1;
        for (auto [nbr, id] : t.neighbors(cur)) {
          if (!edge_alive[static_cast<size_t>(id)] || nbr == prev) continue;
          next = nbr;
          next_id = id;
          break;
        }
        if (next < 0) throw invariant_violation("broken chain in tree splice");
        w += t.edge(next_id).w;
        prev = cur;
        cur = next;
      }
      if (u < cur) out.add_edge(u, cur, w);
    }
  }
  return out;
}

MinorOracle::MinorOracle(const WeightedGraph& host,
                         std::shared_ptr<const MinorProvider> provider)
    : host_(&host), provider_(std::move(provider)) {}

Subgraph MinorOracle::query(const OracleQuery& q) const {
  validate_query(q, host_->vertex_count());
  WeightedGraph m = provider_->compress(q.terminals);
  if (m.vertex_count() != host_->vertex_count())
    throw contract_violation("compressed graph has wrong vertex universe");

  Subgraph out;
  std::vector<std::unique_ptr<ShortestPathTree>> cache(
      static_cast<size_t>(host_->vertex_count()));
  for (const Edge& e : m.edges()) {
    if (e.w >= 2.0 * q.ell) continue;
    int src = std::min(e.u, e.v);
    int dst = std::max(e.u, e.v);
    auto& spt = cache[static_cast<size_t>(src)];
    if (!spt) spt = std::make_unique<ShortestPathTree>(dijkstra(*host_, src));
    if (!spt->reached(dst))
      throw contract_violation("compressed edge joins disconnected vertices");
    double dh = spt->dist[static_cast<size_t>(dst)];
    if (e.w < dh * (1.0 - kRelTol) - kRelTol)
      throw contract_violation("compressed graph shortens a distance");
    out.add_all(spt->path_edges_to(dst));
  }
  return out;
}

}  // namespace sforge
