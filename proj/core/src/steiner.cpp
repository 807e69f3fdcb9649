#include "sforge/steiner.hpp"

#include <algorithm>
#include <queue>

#include "sforge/graph_io.hpp"
#include "sforge/metric.hpp"
#include "sforge/mst.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

Subgraph steiner_2approx(const WeightedGraph& g,
                         const std::vector<int>& terminals) {
  std::vector<int> ts = normalize_terminals(g, terminals);
  Subgraph out;
  if (ts.size() <= 1) return out;

  TerminalMetric m = metric_completion(g, ts);
  const int k = m.size();
  WeightedGraph mk(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) mk.add_edge(i, j, m.dist(i, j));
  Subgraph metric_tree = minimum_spanning_forest(mk);

  Subgraph cover;
  for (int id : metric_tree.edge_ids) {
    const Edge& e = mk.edge(id);
    cover.add_all(m.kappa_edges(e.u, e.v));
  }
  Subgraph tree = minimum_spanning_forest(g, cover.edge_ids);

  // Shave non-terminal leaves until every leaf is a terminal.
  std::vector<bool> is_terminal(static_cast<size_t>(g.vertex_count()), false);
  for (int t : ts) is_terminal[static_cast<size_t>(t)] = true;
  std::vector<int> degree(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<bool> alive(g.edges().size(), false);
  for (int id : tree.edge_ids) {
    alive[static_cast<size_t>(id)] = true;
    ++degree[static_cast<size_t>(g.edge(id).u)];
    ++degree[static_cast<size_t>(g.edge(id).v)];
  }
  std::vector<std::vector<std::pair<int, int>>> inc(
      static_cast<size_t>(g.vertex_count()));
  for (int id : tree.edge_ids) {
    inc[static_cast<size_t>(g.edge(id).u)].push_back({g.edge(id).v, id});
    inc[static_cast<size_t>(g.edge(id).v)].push_back({g.edge(id).u, id});
  }
  std::queue<int> leaves;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (degree[static_cast<size_t>(v)] == 1 && !is_terminal[static_cast<size_t>(v)])
      leaves.push(v);
  while (!leaves.empty()) {
    int v = leaves.front();
    leaves.pop();
    for (auto [nbr, id] : inc[static_cast<size_t>(v)]) {
      if (!alive[static_cast<size_t>(id)]) continue;
      alive[static_cast<size_t>(id)] = false;
      --degree[static_cast<size_t>(v)];
      --degree[static_cast<size_t>(nbr)];
      if (degree[static_cast<size_t>(nbr)] == 1 &&
          !is_terminal[static_cast<size_t>(nbr)])
        leaves.push(nbr);
    }
  }
  for (int id : tree.edge_ids)
    if (alive[static_cast<size_t>(id)]) out.add(id);
  return out;
}

double steiner_exact_weight(const WeightedGraph& g,
                            const std::vector<int>& terminals,
                            int max_terminals) {
  std::vector<int> ts = normalize_terminals(g, terminals);
  const int k = static_cast<int>(ts.size());
  if (k <= 1) return 0.0;
  if (k > max_terminals)
    throw input_error("steiner_exact_weight: " + std::to_string(k) +
                      " terminals exceeds limit " +
                      std::to_string(max_terminals));
  const int n = g.vertex_count();
  std::vector<std::vector<double>> d(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) d[static_cast<size_t>(v)] = dijkstra(g, v).dist;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (d[static_cast<size_t>(ts[static_cast<size_t>(i)])]
           [static_cast<size_t>(ts[static_cast<size_t>(j)])] >= kInf)
        throw input_error("terminals in different components");

  const int full = (1 << k) - 1;
  std::vector<std::vector<double>> dp(
      static_cast<size_t>(full + 1),
      std::vector<double>(static_cast<size_t>(n), kInf));
  for (int i = 0; i < k; ++i)
    for (int v = 0; v < n; ++v)
      dp[static_cast<size_t>(1 << i)][static_cast<size_t>(v)] =
          d[static_cast<size_t>(ts[static_cast<size_t>(i)])]
           [static_cast<size_t>(v)];
  for (int S = 1; S <= full; ++S) {
    auto& row = dp[static_cast<size_t>(S)];
    if ((S & (S - 1)) != 0) {
      for (int sub = (S - 1) & S; sub; sub = (sub - 1) & S) {
        const auto& a = dp[static_cast<size_t>(sub)];
        const auto& b = dp[static_cast<size_t>(S ^ sub)];
        for (int v = 0; v < n; ++v) {
          double cand = a[static_cast<size_t>(v)] + b[static_cast<size_t>(v)];
          if (cand < row[static_cast<size_t>(v)])
            row[static_cast<size_t>(v)] = cand;
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      double best = row[static_cast<size_t>(v)];
      const auto& dv = d[static_cast<size_t>(v)];
      for (int u = 0; u < n; ++u) {
        double cand = row[static_cast<size_t>(u)] + dv[static_cast<size_t>(u)];
        if (cand < best) best = cand;
      }
      row[static_cast<size_t>(v)] = best;
    }
  }
  return dp[static_cast<size_t>(full)][static_cast<size_t>(ts[0])];
}

}  // namespace sforge
