#include "sforge/ell_close.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sforge/errors.hpp"
#include "sforge/graph_io.hpp"
#include "sforge/ptp_spanner.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

namespace {

struct Ctx {
  const SeparatorProvider* provider;
  double ell;
  double epsilon;
  int depth_cap;
  EllCloseDiagnostics* diag;
};

std::vector<int> map_seq(const std::vector<int>& seq,
                         const std::vector<int>& old_to_new) {
  std::vector<int> out;
  out.reserve(seq.size());
  for (int v : seq) {
    int nv = old_to_new[static_cast<size_t>(v)];
    if (nv < 0) throw invariant_violation("sequence leaves the subgraph");
    out.push_back(nv);
  }
  return out;
}

// lg: current connected component graph (local ids); to_host_edge maps
// lg edge ids to host edge ids. terminals/demands are in local ids.
Subgraph rec(const WeightedGraph& lg, const std::vector<int>& to_host_edge,
             const std::vector<int>& terminals,
             std::vector<std::vector<int>> demands, int depth, Ctx& ctx) {
  Subgraph out;
  if (terminals.size() <= 1) return out;
  if (demands.empty()) return out;
  if (ctx.diag) ctx.diag->max_depth = std::max(ctx.diag->max_depth, depth);

  SeparatorFamily fam = ctx.provider->separate(lg);
  if (ctx.diag) {
    ++ctx.diag->separator_calls;
    ctx.diag->worst_balance = std::max(ctx.diag->worst_balance, fam.balance);
  }
  if (depth > ctx.depth_cap)
    throw invariant_violation(
        "separator recursion exceeded depth cap " +
        std::to_string(ctx.depth_cap) + " (latest balance " +
        std::to_string(fam.balance) + " on " +
        std::to_string(lg.vertex_count()) + " vertices)");

  std::vector<bool> removed(static_cast<size_t>(lg.vertex_count()), false);
  for (size_t li = 0; li < fam.levels.size(); ++li) {
    const auto& level = fam.levels[li];
    std::vector<bool> on_level(static_cast<size_t>(lg.vertex_count()), false);
    for (const auto& path : level)
      for (int v : path) on_level[static_cast<size_t>(v)] = true;

    std::vector<std::vector<int>> crossing, staying;
    for (auto& q : demands) {
      bool crosses = false;
      for (int v : q)
        if (on_level[static_cast<size_t>(v)]) {
          crosses = true;
          break;
        }
      (crosses ? crossing : staying).push_back(std::move(q));
    }
    demands = std::move(staying);

    if (!crossing.empty()) {
      std::vector<int> alive;
      for (int v = 0; v < lg.vertex_count(); ++v)
        if (!removed[static_cast<size_t>(v)]) alive.push_back(v);
      SubgraphView view = extract_induced(lg, alive);
      std::vector<std::vector<int>> bases;
      for (const auto& path : level)
        bases.push_back(map_seq(path, view.global_to_local));
      std::vector<std::vector<int>> local_demands;
      for (const auto& q : crossing)
        local_demands.push_back(map_seq(q, view.global_to_local));
      Subgraph piece = ptp_spanner(view.graph, bases, local_demands, ctx.ell,
                                   ctx.epsilon);
      if (ctx.diag) ++ctx.diag->ptp_calls;
      for (int id : piece.edge_ids)
        out.add(to_host_edge[static_cast<size_t>(
            view.edge_to_global[static_cast<size_t>(id)])]);
    }
    for (const auto& path : level)
      for (int v : path) removed[static_cast<size_t>(v)] = true;
  }

  if (demands.empty()) return out;

  std::vector<int> alive;
  for (int v = 0; v < lg.vertex_count(); ++v)
    if (!removed[static_cast<size_t>(v)]) alive.push_back(v);
  if (alive.empty())
    throw invariant_violation("demands survived the whole separator");
  SubgraphView rest = extract_induced(lg, alive);
  std::vector<std::vector<int>> comps = rest.graph.components();
  std::vector<int> comp_of(static_cast<size_t>(rest.graph.vertex_count()), -1);
  for (size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[static_cast<size_t>(v)] = static_cast<int>(c);

  std::vector<std::vector<std::vector<int>>> comp_demands(comps.size());
  for (const auto& q : demands) {
    std::vector<int> local = map_seq(q, rest.global_to_local);
    int c = comp_of[static_cast<size_t>(local.front())];
    for (int v : local)
      if (comp_of[static_cast<size_t>(v)] != c)
        throw invariant_violation("demand spans two components");
    comp_demands[static_cast<size_t>(c)].push_back(std::move(local));
  }
  std::vector<bool> is_terminal(static_cast<size_t>(lg.vertex_count()), false);
  for (int t : terminals) is_terminal[static_cast<size_t>(t)] = true;

  for (size_t c = 0; c < comps.size(); ++c) {
    if (comp_demands[c].empty()) continue;
    SubgraphView comp_view = extract_induced(rest.graph, comps[c]);
    std::vector<int> comp_terms;
    for (int v : comps[c])
      if (is_terminal[static_cast<size_t>(
              rest.to_global[static_cast<size_t>(v)])])
        comp_terms.push_back(comp_view.global_to_local[static_cast<size_t>(v)]);
    std::vector<std::vector<int>> local_demands;
    for (const auto& q : comp_demands[c])
      local_demands.push_back(map_seq(q, comp_view.global_to_local));
    std::vector<int> to_host;
    to_host.reserve(comp_view.edge_to_global.size());
    for (int id : comp_view.edge_to_global)
      to_host.push_back(to_host_edge[static_cast<size_t>(
          rest.edge_to_global[static_cast<size_t>(id)])]);
    out = subgraph_union(out, rec(comp_view.graph, to_host, comp_terms,
                                  std::move(local_demands), depth + 1, ctx));
  }
  return out;
}

}  // namespace

Subgraph ell_close_spanner(const WeightedGraph& g,
                           const std::vector<int>& terminals,
                           const std::vector<std::vector<int>>& demand_paths,
                           double ell, double epsilon,
                           const SeparatorProvider& provider,
                           EllCloseDiagnostics* diag, int depth_cap) {
  if (!(ell > 0.0)) throw input_error("ell_close_spanner needs ell > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw input_error("ell_close_spanner needs epsilon in (0,1)");
  std::vector<int> ts = normalize_terminals(g, terminals);
  for (const auto& q : demand_paths) {
    if (q.size() < 2) throw input_error("demand path too short");
    double w = path_weight(g, path_edges_of(g, q));
    if (!leq_tol(w, ell, kRelTol))
      throw input_error("demand path heavier than the scale");
  }
  if (depth_cap <= 0) {
    int n = std::max(2, g.vertex_count());
    depth_cap = 4 * static_cast<int>(std::ceil(std::log2(n))) + 4;
  }
  Ctx ctx{&provider, ell, epsilon, depth_cap, diag};

  // Work per connected component; identity maps at the top level.
  Subgraph out;
  std::vector<std::vector<int>> comps = g.components();
  std::vector<int> comp_of = g.component_ids();
  for (const auto& comp : comps) {
    SubgraphView view = extract_induced(g, comp);
    std::vector<int> local_terms;
    for (int t : ts)
      if (comp_of[static_cast<size_t>(t)] ==
          comp_of[static_cast<size_t>(comp.front())])
        local_terms.push_back(view.global_to_local[static_cast<size_t>(t)]);
    std::vector<std::vector<int>> local_demands;
    for (const auto& q : demand_paths)
      if (comp_of[static_cast<size_t>(q.front())] ==
          comp_of[static_cast<size_t>(comp.front())])
        local_demands.push_back(map_seq(q, view.global_to_local));
    if (local_terms.size() <= 1 || local_demands.empty()) continue;
    out = subgraph_union(out, rec(view.graph, view.edge_to_global, local_terms,
                                  std::move(local_demands), 0, ctx));
  }
  if (diag) diag->output_weight = out.weight(g);
  return out;
}

std::vector<std::vector<int>> terminal_demand_paths(
    const WeightedGraph& g, const std::vector<int>& terminals, double ell) {
  std::vector<int> ts = normalize_terminals(g, terminals);
  std::vector<bool> is_terminal(static_cast<size_t>(g.vertex_count()), false);
  for (int t : ts) is_terminal[static_cast<size_t>(t)] = true;
  std::vector<std::vector<int>> demands;
  for (size_t i = 0; i < ts.size(); ++i) {
    ShortestPathTree spt = dijkstra(g, ts[i]);
    for (size_t j = i + 1; j < ts.size(); ++j) {
      double d = spt.dist[static_cast<size_t>(ts[j])];
      if (d >= kInf || !leq_tol(d, ell, kRelTol)) continue;
      std::vector<int> path = spt.path_to(ts[j]);
      bool internal_terminal = false;
      for (size_t p = 1; p + 1 < path.size(); ++p)
        if (is_terminal[static_cast<size_t>(path[p])]) {
          internal_terminal = true;
          break;
        }
      if (!internal_terminal) demands.push_back(std::move(path));
    }
  }
  return demands;
}

SeparatorOracle::SeparatorOracle(
    const WeightedGraph& host,
    std::shared_ptr<const SeparatorProvider> provider)
    : host_(&host), provider_(std::move(provider)) {}

std::string SeparatorOracle::name() const {
  return "separator-" + provider_->name();
}

Subgraph SeparatorOracle::query(const OracleQuery& q) const {
  validate_query(q, host_->vertex_count());
  Subgraph allowed;
  for (int id = 0; id < host_->edge_count(); ++id)
    if (leq_tol(host_->edge(id).w, 2.0 * q.ell, kRelTol)) allowed.add(id);
  std::vector<int> edge_map;
  WeightedGraph pruned = allowed.materialize(*host_, &edge_map);

  std::vector<std::vector<int>> demands =
      terminal_demand_paths(pruned, q.terminals, q.ell);
  EllCloseDiagnostics diag;
  Subgraph local = ell_close_spanner(pruned, q.terminals, demands, q.ell,
                                     q.epsilon, *provider_, &diag);
  last_ = diag;
  Subgraph out;
  for (int id : local.edge_ids) out.add(edge_map[static_cast<size_t>(id)]);
  return out;
}

}  // namespace sforge
