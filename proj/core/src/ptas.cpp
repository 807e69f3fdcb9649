#include "sforge/ptas.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "sforge/errors.hpp"
#include "sforge/graph_io.hpp"
#include "sforge/mst.hpp"
#include "sforge/report.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/steiner.hpp"
#include "sforge/subset_spanner.hpp"
#include "sforge/tree_decomposition.hpp"

namespace sforge {
namespace {

struct Shrunk {
  WeightedGraph graph;            // simple contracted graph
  std::vector<int> rep;           // host vertex -> smallest block member
  std::map<int, int> cid;         // representative -> contracted id
  std::vector<int> edge_host;     // contracted edge -> host edge id
};

// Contracts x_edges inside the spanner; vertices are the spanner's
// endpoints plus keep_vertices, parallel survivors keep their lightest
// edge, self loops vanish.
Shrunk contract(const WeightedGraph& host, const std::vector<int>& s_edges,
                const std::vector<int>& x_edges,
                const std::vector<int>& keep_vertices) {
  DisjointSets dsu(host.vertex_count());
  for (int e : x_edges) {
    const Edge& ed = host.edge(e);
    dsu.unite(ed.u, ed.v);
  }
  std::set<int> involved(keep_vertices.begin(), keep_vertices.end());
  for (int e : s_edges) {
    involved.insert(host.edge(e).u);
    involved.insert(host.edge(e).v);
  }
  Shrunk out;
  out.rep.assign(static_cast<size_t>(host.vertex_count()), -1);
  std::map<int, int> min_of_root;
  for (int v : involved) {
    const int r = dsu.find(v);
    auto it = min_of_root.find(r);
    if (it == min_of_root.end() || v < it->second) min_of_root[r] = v;
  }
  for (int v : involved) {
    out.rep[static_cast<size_t>(v)] = min_of_root[dsu.find(v)];
  }
  for (const auto& [root, mn] : min_of_root) {
    const int id = static_cast<int>(out.cid.size());
    out.cid.emplace(mn, id);
  }
  out.graph = WeightedGraph(static_cast<int>(out.cid.size()));
  std::map<std::pair<int, int>, std::pair<double, int>> best;  // -> (w, host id)
  for (int e : s_edges) {
    if (std::binary_search(x_edges.begin(), x_edges.end(), e)) continue;
    const Edge& ed = host.edge(e);
    const int a = out.rep[static_cast<size_t>(ed.u)];
    const int b = out.rep[static_cast<size_t>(ed.v)];
    if (a == b) continue;
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    auto it = best.find(key);
    if (it == best.end() || ed.w < it->second.first) {
      best[key] = {ed.w, e};
    }
  }
  for (const auto& [key, val] : best) {
    out.graph.add_edge(out.cid.at(key.first), out.cid.at(key.second),
                       val.first);
    out.edge_host.push_back(val.second);
  }
  return out;
}

double part_weight(const WeightedGraph& host, const std::vector<int>& ids) {
  double w = 0.0;
  for (int e : ids) w += host.edge(e).w;
  return w;
}

}  // namespace

ContractionPartition partition_spanner_edges(const WeightedGraph& host,
                                             const Subgraph& spanner,
                                             int groups, PartitionScheme scheme,
                                             int bfs_root) {
  if (groups < 1) throw input_error("the part count must be positive");
  if (bfs_root < 0 || bfs_root >= host.vertex_count()) {
    throw input_error("layer root out of range");
  }
  ContractionPartition out;
  out.groups = groups;
  out.parts.assign(static_cast<size_t>(groups), {});
  if (scheme == PartitionScheme::kBfsLayers) {
    std::vector<int> mat_edges;
    const WeightedGraph s = spanner.materialize(host, &mat_edges);
    std::vector<int> depth(static_cast<size_t>(s.vertex_count()), 0);
    std::vector<char> seen(static_cast<size_t>(s.vertex_count()), 0);
    std::deque<int> q{bfs_root};
    seen[static_cast<size_t>(bfs_root)] = 1;
    while (!q.empty()) {
      const int x = q.front();
      q.pop_front();
      for (const auto& [y, id] : s.neighbors(x)) {
        if (!seen[static_cast<size_t>(y)]) {
          seen[static_cast<size_t>(y)] = 1;
          depth[static_cast<size_t>(y)] = depth[static_cast<size_t>(x)] + 1;
          q.push_back(y);
        }
      }
    }
    for (int e : spanner.edge_ids) {
      const Edge& ed = host.edge(e);
      const int layer = std::min(depth[static_cast<size_t>(ed.u)],
                                 depth[static_cast<size_t>(ed.v)]);
      out.parts[static_cast<size_t>(layer % groups)].push_back(e);
    }
  } else {
    std::vector<int> order = spanner.edge_ids;
    std::sort(order.begin(), order.end(), [&host](int a, int b) {
      if (host.edge(a).w != host.edge(b).w) {
        return host.edge(a).w > host.edge(b).w;
      }
      return a < b;
    });
    std::vector<double> load(static_cast<size_t>(groups), 0.0);
    for (int e : order) {
      size_t pick = 0;
      for (size_t i = 1; i < load.size(); ++i) {
        if (load[i] < load[pick]) pick = i;
      }
      out.parts[pick].push_back(e);
      load[pick] += host.edge(e).w;
    }
    for (auto& p : out.parts) std::sort(p.begin(), p.end());
  }
  out.chosen = 0;
  double best = part_weight(host, out.parts[0]);
  for (int i = 1; i < groups; ++i) {
    const double w = part_weight(host, out.parts[static_cast<size_t>(i)]);
    if (w < best) {
      best = w;
      out.chosen = i;
    }
  }
  out.chosen_weight = best;
  const Shrunk shr =
      contract(host, spanner.edge_ids,
               out.parts[static_cast<size_t>(out.chosen)], {});
  out.measured_width = min_fill_decomposition(shr.graph).width();
  return out;
}

std::string PtasReport::to_json() const {
  using nlohmann::json;
  json out;
  out["schema"] = 1;
  out["epsilon"] = round9(epsilon);
  out["spanner_lightness"] = round9(spanner_lightness);
  out["g"] = g;
  out["w_X"] = round9(w_x);
  out["measured_width"] = measured_width;
  out["tour_weight"] = round9(tour_weight);
  out["lower_bound"] = round9(lower_bound);
  out["lower_bound_exact"] = lower_bound_exact;
  out["ratio"] = round9(ratio);
  out["odd_vertices"] = odd_vertices;
  out["exact_matching"] = exact_matching;
  json moves = json::array();
  for (const auto& [t, r] : terminal_moves) moves.push_back({t, r});
  out["terminal_moves"] = moves;
  return out.dump(2);
}

PtasResult run_ptas(const WeightedGraph& g, const std::vector<int>& terminals,
                    double epsilon, const SpannerOracle& oracle,
                    PartitionScheme scheme, const PtasOptions& opt) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw input_error("epsilon must lie in (0, 1)");
  }
  const std::vector<int> terms = normalize_terminals(g, terminals);
  const int k = static_cast<int>(terms.size());
  PtasResult out;
  out.report.epsilon = epsilon;
  if (k <= 1) {
    out.report.ratio = 1.0;
    out.report.lower_bound_exact = true;
    return out;
  }
  const std::vector<int> comp = g.component_ids();
  for (int t : terms) {
    if (comp[static_cast<size_t>(t)] != comp[static_cast<size_t>(terms[0])]) {
      throw input_error("terminals sit in different components");
    }
  }

  SubsetSpannerOptions sopt;
  sopt.epsilon = epsilon;
  sopt.rescale = true;
  sopt.check_invariants = opt.check_invariants;
  const SubsetSpannerResult sres = build_subset_spanner(g, terms, oracle, sopt);
  const Subgraph& spanner = sres.spanner;
  const double w_s = spanner.weight(g);
  out.report.spanner_lightness = sres.lightness;

  const double w_tree = steiner_2approx(g, terms).weight(g);
  const double opt_estimate = 2.0 * w_tree;
  long g_raw = static_cast<long>(std::ceil(w_s / (epsilon * opt_estimate)));
  g_raw = std::max<long>(1, std::min<long>(g_raw, spanner.size()));
  const int g_count = static_cast<int>(g_raw);
  out.report.g = g_count;

  const ContractionPartition part =
      partition_spanner_edges(g, spanner, g_count, scheme, terms[0]);
  // g = 1 would contract everything; run the exact solver on the whole
  // spanner instead.
  const std::vector<int> x_edges =
      g_count == 1 ? std::vector<int>{}
                   : part.parts[static_cast<size_t>(part.chosen)];
  out.report.w_x = g_count == 1 ? 0.0 : part.chosen_weight;
  if (opt.check_invariants &&
      !leq_tol(out.report.w_x, w_s / static_cast<double>(g_count))) {
    throw invariant_violation("chosen part outweighs its pigeonhole share");
  }

  const Shrunk shr = contract(g, spanner.edge_ids, x_edges, terms);
  std::vector<int> c_terms;
  for (int t : terms) {
    const int r = shr.rep[static_cast<size_t>(t)];
    if (r != t) out.report.terminal_moves.push_back({t, r});
    c_terms.push_back(shr.cid.at(r));
  }
  std::sort(c_terms.begin(), c_terms.end());
  c_terms.erase(std::unique(c_terms.begin(), c_terms.end()), c_terms.end());

  const TreeDecomposition td = min_fill_decomposition(shr.graph);
  out.report.measured_width = td.width();
  if (out.report.measured_width > opt.width_cap) {
    throw input_error(
        "contracted width " + std::to_string(out.report.measured_width) +
        " exceeds the cap " + std::to_string(opt.width_cap) +
        "; a larger epsilon or the other partition scheme shrinks it");
  }
  SubsetTspOptions topt;
  topt.width_cap = std::max(opt.width_cap, 2);
  topt.check_invariants = opt.check_invariants;
  const TourResult dp = subset_tsp_dp(shr.graph, c_terms, td, topt);

  // Lift: map walk edges back to host ids, then double the contracted
  // part inside every block the walk or a terminal touches so entries,
  // exits, and terminals connect up.
  std::map<int, int> mult;  // host edge id -> multiplicity
  std::set<int> touched;    // block representatives
  for (const TourEdge& te : dp.edges) {
    const int host_e = shr.edge_host[static_cast<size_t>(te.edge)];
    mult[host_e] += te.mult;
    touched.insert(shr.rep[static_cast<size_t>(g.edge(host_e).u)]);
    touched.insert(shr.rep[static_cast<size_t>(g.edge(host_e).v)]);
  }
  for (int t : terms) touched.insert(shr.rep[static_cast<size_t>(t)]);
  for (int e : x_edges) {
    if (touched.count(shr.rep[static_cast<size_t>(g.edge(e).u)])) {
      mult[e] += 2;
    }
  }

  std::map<int, long> deg;
  for (const auto& [e, m] : mult) {
    deg[g.edge(e).u] += m;
    deg[g.edge(e).v] += m;
  }
  std::vector<int> odd;
  for (const auto& [v, d] : deg) {
    if (d % 2 != 0) odd.push_back(v);
  }
  out.report.odd_vertices = static_cast<int>(odd.size());
  if (!odd.empty()) {
    if (odd.size() % 2 != 0) {
      throw invariant_violation("odd-degree vertices do not pair up");
    }
    std::vector<int> mat_edges;
    const WeightedGraph s = spanner.materialize(g, &mat_edges);
    const int o = static_cast<int>(odd.size());
    std::vector<ShortestPathTree> trees;
    trees.reserve(odd.size());
    for (int v : odd) trees.push_back(dijkstra(s, v));
    std::vector<std::vector<double>> d(static_cast<size_t>(o),
                                       std::vector<double>(static_cast<size_t>(o)));
    for (int i = 0; i < o; ++i) {
      for (int j = 0; j < o; ++j) {
        d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            trees[static_cast<size_t>(i)]
                .dist[static_cast<size_t>(odd[static_cast<size_t>(j)])];
        if (i != j && !(d[static_cast<size_t>(i)][static_cast<size_t>(j)] <
                        kInf)) {
          throw invariant_violation("odd vertices are cut off in the spanner");
        }
      }
    }
    std::vector<std::pair<int, int>> pairs;
    out.report.exact_matching = o <= 20;
    if (out.report.exact_matching) {
      const int full = (1 << o) - 1;
      std::vector<double> dp_m(static_cast<size_t>(full + 1), kInf);
      std::vector<std::pair<int, int>> pick(static_cast<size_t>(full + 1),
                                            {-1, -1});
      dp_m[0] = 0.0;
      for (int mask = 0; mask < full; ++mask) {
        if (!(dp_m[static_cast<size_t>(mask)] < kInf)) continue;
        int i = 0;
        while (mask & (1 << i)) ++i;
        for (int j = i + 1; j < o; ++j) {
          if (mask & (1 << j)) continue;
          const int next = mask | (1 << i) | (1 << j);
          const double cand = dp_m[static_cast<size_t>(mask)] +
                              d[static_cast<size_t>(i)][static_cast<size_t>(j)];
          if (cand < dp_m[static_cast<size_t>(next)]) {
            dp_m[static_cast<size_t>(next)] = cand;
            pick[static_cast<size_t>(next)] = {i, j};
          }
        }
      }
      int mask = full;
      while (mask) {
        const auto [i, j] = pick[static_cast<size_t>(mask)];
        pairs.push_back({i, j});
        mask &= ~(1 << i);
        mask &= ~(1 << j);
      }
    } else {
      std::vector<char> used(static_cast<size_t>(o), 0);
      for (int round = 0; round < o / 2; ++round) {
        int bi = -1, bj = -1;
        for (int i = 0; i < o; ++i) {
          if (used[static_cast<size_t>(i)]) continue;
          for (int j = i + 1; j < o; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            if (bi < 0 || d[static_cast<size_t>(i)][static_cast<size_t>(j)] <
                              d[static_cast<size_t>(bi)][static_cast<size_t>(bj)]) {
              bi = i;
              bj = j;
            }
          }
        }
        used[static_cast<size_t>(bi)] = used[static_cast<size_t>(bj)] = 1;
        pairs.push_back({bi, bj});
      }
    }
    for (const auto& [i, j] : pairs) {
      for (int le : trees[static_cast<size_t>(i)].path_edges_to(
               odd[static_cast<size_t>(j)])) {
        mult[mat_edges[static_cast<size_t>(le)]] += 1;
      }
    }
  }

  double tour = 0.0;
  for (const auto& [e, m] : mult) {
    const Edge& ed = g.edge(e);
    out.edges.push_back({e, ed.u, ed.v, ed.w, m});
    tour += ed.w * m;
  }
  out.tour_weight = tour;
  out.report.tour_weight = tour;

  if (opt.check_invariants) {
    std::map<int, long> fdeg;
    std::map<int, std::vector<int>> fadj;
    for (const TourEdge& te : out.edges) {
      fdeg[te.u] += te.mult;
      fdeg[te.v] += te.mult;
      fadj[te.u].push_back(te.v);
      fadj[te.v].push_back(te.u);
    }
    for (const auto& [v, dv] : fdeg) {
      if (dv % 2 != 0) {
        throw invariant_violation("lifted walk has an odd vertex");
      }
    }
    for (int t : terms) {
      if (!fdeg.count(t)) {
        throw invariant_violation("lifted walk misses a terminal");
      }
    }
    if (!fdeg.empty()) {
      std::set<int> seen{fdeg.begin()->first};
      std::deque<int> q{fdeg.begin()->first};
      while (!q.empty()) {
        const int x = q.front();
        q.pop_front();
        for (int y : fadj[x]) {
          if (seen.insert(y).second) q.push_back(y);
        }
      }
      if (seen.size() != fdeg.size()) {
        throw invariant_violation("lifted walk is disconnected");
      }
    }
  }

  if (k <= 20) {
    out.report.lower_bound = held_karp_tour(g, terms);
    out.report.lower_bound_exact = true;
    if (opt.check_invariants &&
        !leq_tol(out.report.lower_bound, out.tour_weight)) {
      throw invariant_violation("lifted walk beats the exact optimum");
    }
  } else {
    out.report.lower_bound = w_tree / 2.0;
    out.report.lower_bound_exact = false;
  }
  out.report.ratio = out.report.lower_bound > 0.0
                         ? out.tour_weight / out.report.lower_bound
                         : 1.0;
  return out;
}

}  // namespace sforge
