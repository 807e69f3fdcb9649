#include "sforge/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sforge/errors.hpp"
#include "sforge/mst.hpp"

namespace sforge {
namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

// Spanner membership plus adjacency, kept incremental so per-level checks
// can run Dijkstra restricted to bought edges without copying the graph.
struct SpannerState {
  const WeightedGraph* g;
  std::vector<char> in_spanner;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (nbr, edge)

  SpannerState(const WeightedGraph& host, const Subgraph& seed)
      : g(&host), in_spanner(host.edge_count(), 0), adj(host.vertex_count()) {
    for (int id : seed.edge_ids) insert(id);
  }

  void insert(int edge_id) {
    if (in_spanner[edge_id]) return;
    in_spanner[edge_id] = 1;
    const auto& e = g->edge(edge_id);
    adj[e.u].push_back({e.v, edge_id});
    adj[e.v].push_back({e.u, edge_id});
  }

  std::vector<double> dist_from(int source) const {
    std::vector<double> dist(adj.size(), kInfD);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (auto [v, id] : adj[u]) {
        double nd = d + g->edge(id).w;
        if (nd < dist[v]) {
          dist[v] = nd;
          pq.push({nd, v});
        }
      }
    }
    return dist;
  }
};

// Diameter of a small structure graph where traversing node v costs
// node_d[v] and traversing a link costs its length.  Endpoints count.
// Links may form cycles, so this runs Dijkstra from every node.
double struct_diameter(const std::vector<double>& node_d,
                       const std::vector<std::tuple<int, int, double>>& links) {
  const int n = static_cast<int>(node_d.size());
  if (n == 0) return 0.0;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& [a, b, w] : links) {
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  }
  double best = 0.0;
  std::vector<double> dist(n);
  using Item = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInfD);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[s] = node_d[s];
    pq.push({dist[s], s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (auto [v, w] : adj[u]) {
        double nd = d + w + node_d[v];
        if (nd < dist[v]) {
          dist[v] = nd;
          pq.push({nd, v});
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] == kInfD)
        throw invariant_violation("cluster structure is disconnected");
      best = std::max(best, dist[v]);
    }
  }
  return best;
}

// Node-weighted diameter of a tree given as local adjacency.  Linear
// rooted scan tracking, per node, the two heaviest downward paths.
double tree_diameter(const std::vector<double>& node_d,
                     const std::vector<std::vector<std::pair<int, double>>>& adj) {
  const int n = static_cast<int>(node_d.size());
  if (n == 0) return 0.0;
  std::vector<double> down(n, 0.0);
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> parent(n, -2);
  order.push_back(0);
  parent[0] = -1;
  for (size_t h = 0; h < order.size(); ++h) {
    int u = order[h];
    for (auto [v, w] : adj[u]) {
      (void)w;
      if (parent[v] == -2) {
        parent[v] = u;
        order.push_back(v);
      }
    }
  }
  if (static_cast<int>(order.size()) != n)
    throw invariant_violation("cluster structure is disconnected");
  double best = 0.0;
  for (int h = n - 1; h >= 0; --h) {
    int u = order[h];
    double top1 = 0.0, top2 = 0.0;
    for (auto [v, w] : adj[u]) {
      if (parent[v] != u) continue;
      double cand = w + down[v];
      if (cand > top1) {
        top2 = top1;
        top1 = cand;
      } else if (cand > top2) {
        top2 = cand;
      }
    }
    down[u] = node_d[u] + top1;
    best = std::max(best, node_d[u] + top1 + top2);
  }
  return best;
}

}  // namespace

std::vector<std::pair<int, int>> metric_mst_pairs(const TerminalMetric& metric) {
  const int k = metric.size();
  std::vector<std::tuple<double, int, int>> edges;
  edges.reserve(static_cast<size_t>(k) * (k - 1) / 2);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) edges.push_back({metric.dist(a, b), a, b});
  std::sort(edges.begin(), edges.end());
  DisjointSets dsu(k);
  std::vector<std::pair<int, int>> out;
  out.reserve(k > 0 ? k - 1 : 0);
  for (const auto& [w, a, b] : edges) {
    (void)w;
    if (dsu.unite(a, b)) out.push_back({a, b});
  }
  return out;
}

SubdividedMst subdivide_mst(const TerminalMetric& metric,
                            const std::vector<std::pair<int, int>>& mst_pairs,
                            double w0) {
  if (!(w0 > 0.0)) throw input_error("subdivision step must be positive");
  SubdividedMst t;
  t.terminal_count = metric.size();
  t.node_count = metric.size();
  t.adj.resize(metric.size());
  for (auto [a, b] : mst_pairs) {
    const double w = metric.dist(a, b);
    int m = std::max(1, static_cast<int>(std::ceil(w / w0 - kRelTol)));
    SubdividedMstEdge e{a, b, w, m};
    const int edge_idx = static_cast<int>(t.edges.size());
    t.edges.push_back(e);
    const double pw = w / m;
    int prev = a;
    for (int s = 0; s < m; ++s) {
      int next = (s == m - 1) ? b : t.node_count++;
      if (next >= static_cast<int>(t.adj.size())) t.adj.resize(next + 1);
      const int pid = static_cast<int>(t.pieces.size());
      t.pieces.push_back({prev, next, pw, edge_idx, s});
      t.adj[prev].push_back({next, pid});
      t.adj[next].push_back({prev, pid});
      prev = next;
    }
  }
  for (auto& lst : t.adj) std::sort(lst.begin(), lst.end());
  return t;
}

std::vector<std::vector<int>> chop_tree(const SubdividedMst& tree,
                                        double ell0) {
  if (!(ell0 > 0.0)) throw input_error("chop scale must be positive");
  const int n = tree.node_count;
  std::vector<std::vector<int>> clusters;
  if (n == 0) return clusters;
  std::vector<int> assigned(n, -1);

  // BFS order from node 0; reversed it processes children before parents.
  std::vector<int> parent(n, -2), parent_piece(n, -1), order;
  order.reserve(n);
  order.push_back(0);
  parent[0] = -1;
  for (size_t h = 0; h < order.size(); ++h) {
    int u = order[h];
    for (auto [v, pid] : tree.adj[u]) {
      if (parent[v] == -2) {
        parent[v] = u;
        parent_piece[v] = pid;
        order.push_back(v);
      }
    }
  }
  if (static_cast<int>(order.size()) != n)
    throw invariant_violation("subdivided tree is disconnected");

  // Collects the still-unassigned subtree hanging below `root`.
  auto collect = [&](int root, std::vector<int>& out) {
    std::vector<int> stack{root};
    assigned[root] = 0;  // temporary, rewritten by caller
    out.push_back(root);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [v, pid] : tree.adj[u]) {
        (void)pid;
        if (v == parent[u] || assigned[v] != -1) continue;
        assigned[v] = 0;
        out.push_back(v);
        stack.push_back(v);
      }
    }
  };

  std::vector<double> height(n, 0.0);
  for (int h = n - 1; h >= 0; --h) {
    int v = order[h];
    std::vector<std::pair<double, int>> branches;  // (reach, child)
    for (auto [c, pid] : tree.adj[v]) {
      if (parent[c] != v || assigned[c] != -1) continue;
      branches.push_back({height[c] + tree.pieces[pid].w, c});
    }
    std::sort(branches.begin(), branches.end(),
              [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first > y.first;
                return x.second < y.second;
              });
    const bool closes =
        !branches.empty() &&
        (branches[0].first >= ell0 ||
         (branches.size() >= 2 &&
          branches[0].first + branches[1].first >= ell0));
    if (closes && v != 0) {
      std::vector<int> nodes{v};
      assigned[v] = 0;
      for (auto [reach, c] : branches) {
        (void)reach;
        collect(c, nodes);
      }
      const int id = static_cast<int>(clusters.size());
      for (int u : nodes) assigned[u] = id;
      std::sort(nodes.begin(), nodes.end());
      clusters.push_back(std::move(nodes));
    } else if (!closes) {
      height[v] = branches.empty() ? 0.0 : branches[0].first;
    } else {
      // root closing is handled uniformly by the remainder logic below
    }
  }

  if (assigned[0] == -1 || clusters.empty()) {
    std::vector<int> rest;
    if (assigned[0] == -1) collect(0, rest);
    if (clusters.empty()) {
      for (int u : rest) assigned[u] = 0;
      std::sort(rest.begin(), rest.end());
      clusters.push_back(std::move(rest));
      return clusters;
    }
    // Merge the short remainder around the root into the neighboring
    // cluster reached by the smallest boundary piece.
    for (int u : rest) assigned[u] = -1;
    int best_piece = -1, target = -1;
    for (int u : rest) assigned[u] = -2;  // tag remainder members
    for (size_t pid = 0; pid < tree.pieces.size(); ++pid) {
      const auto& p = tree.pieces[pid];
      const bool au = assigned[p.u] == -2, av = assigned[p.v] == -2;
      if (au == av) continue;
      int other = au ? p.v : p.u;
      if (assigned[other] < 0) continue;
      if (best_piece == -1 || static_cast<int>(pid) < best_piece) {
        best_piece = static_cast<int>(pid);
        target = assigned[other];
      }
    }
    if (target == -1)
      throw invariant_violation("root remainder has no neighboring cluster");
    auto& dst = clusters[target];
    for (int u : rest) {
      assigned[u] = target;
      dst.push_back(u);
    }
    std::sort(dst.begin(), dst.end());
  }
  return clusters;
}

namespace {

// One cluster of the current level: the tree nodes it owns, its member
// terminals (metric indices), the bookkeeping diameter, and its account.
struct Clus {
  std::vector<int> nodes;
  std::vector<int> terms;
  double d_book = 0.0;
  int account = -1;
  int chosen = -1;  // smallest member terminal, -1 when none
};

struct KeptEdge {
  int x = -1, y = -1;   // cluster ids, x < y
  int a = -1, b = -1;   // metric indices of the pair
  double w = 0.0;
  bool kappa = false;   // host shortest path for (a, b) bought
  bool high_high = false;
  double conn = kInfD;  // usable connector length between the clusters
};

struct Proto {
  std::vector<int> kids;  // previous-level cluster ids
  std::vector<std::tuple<int, int, double>> links;  // bought connectors
  int phase = 4;
};

}  // namespace

std::vector<LevelReport> run_hierarchy(const WeightedGraph& g,
                                       const TerminalMetric& metric,
                                       const EdgeBuckets& buckets, int class_j,
                                       const SpannerOracle& oracle,
                                       CreditLedger& ledger,
                                       int reserve_account, Subgraph& spanner,
                                       const ClusterOptions& opt) {
  std::vector<LevelReport> reports;
  const int k = metric.size();
  if (k < 2) return reports;
  if (class_j < 1 || class_j > buckets.classes)
    throw input_error("weight class out of range");
  const int top = buckets.top_level(class_j);
  if (top == 0) return reports;  // class holds no pairs, nothing to fund

  const double eps = opt.epsilon;
  const double gg = opt.g;
  const double w0 = buckets.w0;
  const double ell0 = buckets.level_scale(class_j, 0);
  const Credit rate_c = credit_from(opt.credit_rate);

  auto pairs = metric_mst_pairs(metric);
  SubdividedMst tree = subdivide_mst(metric, pairs, w0);
  auto base_sets = chop_tree(tree, ell0);
  if (base_sets.size() == 1)
    throw invariant_violation("bucketed pair inside a single base cluster");

  SpannerState state(g, spanner);
  const std::string tag = std::to_string(class_j);

  // Every tree piece carries the same credit allowance.
  const int piece_count = static_cast<int>(tree.pieces.size());
  std::vector<int> piece_acct(piece_count, -1);
  const Credit piece_credit = rate_c * credit_from(w0);
  for (int p = 0; p < piece_count; ++p) {
    piece_acct[p] = ledger.open_account("p" + tag + "." + std::to_string(p));
    ledger.mint(piece_acct[p], piece_credit, "piece allowance");
  }
  std::vector<char> alive(piece_count, 1);

  int pending_topups = 0;
  auto reserve_transfer = [&](int to, const Credit& amount,
                              const char* memo) {
    if (amount <= 0) return;
    if (ledger.balance(reserve_account) < amount) {
      ledger.mint(reserve_account, amount - ledger.balance(reserve_account),
                  "reserve top-up");
      ++pending_topups;
    }
    ledger.transfer(reserve_account, to, amount, memo);
  };
  auto reserve_spend = [&](const Credit& amount, const char* memo) {
    if (amount <= 0) return;
    if (ledger.balance(reserve_account) < amount) {
      ledger.mint(reserve_account, amount - ledger.balance(reserve_account),
                  "reserve top-up");
      ++pending_topups;
    }
    ledger.spend(reserve_account, amount, memo);
  };
  // Drains up to `remaining` from an account; returns what is still owed.
  auto spend_up_to = [&](int acct, Credit remaining,
                         const char* memo) -> Credit {
    if (remaining <= 0) return remaining;
    Credit amt = std::min(ledger.balance(acct), remaining);
    if (amt > 0) ledger.spend(acct, amt, memo);
    return remaining - amt;
  };

  // Level-0 clusters from the chopped tree.
  std::vector<Clus> cur;
  cur.reserve(base_sets.size());
  std::vector<int> owner(tree.node_count, -1);
  for (size_t ci = 0; ci < base_sets.size(); ++ci) {
    Clus c;
    c.nodes = base_sets[ci];
    for (int u : c.nodes) {
      owner[u] = static_cast<int>(ci);
      if (u < k) c.terms.push_back(u);
    }
    c.chosen = c.terms.empty() ? -1 : c.terms[0];
    cur.push_back(std::move(c));
  }
  for (int p = 0; p < piece_count; ++p)
    alive[p] = owner[tree.pieces[p].u] != owner[tree.pieces[p].v] ? 1 : 0;

  // Bookkeeping diameter and funding for level 0.
  for (size_t ci = 0; ci < cur.size(); ++ci) {
    Clus& c = cur[ci];
    std::vector<int> local(tree.node_count, -1);
    for (size_t h = 0; h < c.nodes.size(); ++h) local[c.nodes[h]] = static_cast<int>(h);
    std::vector<double> nd(c.nodes.size(), 0.0);
    std::vector<std::vector<std::pair<int, double>>> adj(c.nodes.size());
    for (int p = 0; p < piece_count; ++p) {
      const auto& pc = tree.pieces[p];
      int lu = local[pc.u], lv = local[pc.v];
      if (lu < 0 || lv < 0) continue;
      adj[lu].push_back({lv, pc.w});
      adj[lv].push_back({lu, pc.w});
    }
    c.d_book = tree_diameter(nd, adj);
    c.account = ledger.open_account("c" + tag + ".0." + std::to_string(ci));
    Credit need = rate_c * credit_from(std::max(c.d_book, ell0 / 2.0));
    Credit remaining = need;
    for (int p = 0; p < piece_count && remaining > 0; ++p) {
      const auto& pc = tree.pieces[p];
      if (owner[pc.u] != static_cast<int>(ci) ||
          owner[pc.v] != static_cast<int>(ci))
        continue;
      remaining -= ledger.transfer_up_to(piece_acct[p], c.account, remaining,
                                         "base funding");
    }
    if (remaining > 0) reserve_transfer(c.account, remaining, "base funding");
  }

  const double high_threshold = 2.0 * gg / eps + 1.0;

  for (int level = 1; level <= top; ++level) {
    const double ell = buckets.level_scale(class_j, level);
    LevelReport rep;
    rep.class_j = class_j;
    rep.level = level;
    rep.ell = ell;

    static const std::vector<MetricEdge> kNoEdges;
    auto bucket_at = [&](int lvl) -> const std::vector<MetricEdge>& {
      const auto& levels = buckets.per_class[class_j - 1];
      if (lvl < 1 || lvl > static_cast<int>(levels.size())) return kNoEdges;
      return levels[lvl - 1];
    };

    if (cur.size() == 1) {
      for (int rest = level; rest <= top; ++rest)
        if (!bucket_at(rest).empty())
          throw invariant_violation("bucketed pair inside a single cluster");
      break;
    }

    const auto& bucket = bucket_at(level);
    rep.bucket_edges = static_cast<int>(bucket.size());

    // Cluster graph: lightest surviving pair per cluster pair.
    std::map<std::pair<int, int>, KeptEdge> best;
    for (const auto& me : bucket) {
      int x = owner[me.a], y = owner[me.b];
      if (x == y)
        throw invariant_violation("bucketed pair inside one cluster");
      if (x > y) std::swap(x, y);
      KeptEdge cand;
      cand.x = x;
      cand.y = y;
      cand.a = me.a;
      cand.b = me.b;
      cand.w = me.w;
      auto key = std::make_pair(x, y);
      auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(key, cand);
      } else {
        KeptEdge& old = it->second;
        if (cand.w < old.w ||
            (cand.w == old.w &&
             std::make_pair(cand.a, cand.b) < std::make_pair(old.a, old.b)))
          old = cand;
      }
    }

    // Pairs already served within the allowed detour are dropped before
    // any purchase; distances are measured in the current spanner.
    std::vector<KeptEdge> kept;
    {
      std::vector<KeptEdge> cands;
      for (auto& [key, ke] : best) {
        (void)key;
        cands.push_back(ke);
      }
      std::map<int, std::vector<size_t>> by_src;
      for (size_t i = 0; i < cands.size(); ++i) by_src[cands[i].a].push_back(i);
      const double keep_factor = 1.0 + (6.0 * gg + 1.0) * eps;
      for (auto& [src, idxs] : by_src) {
        auto dist = state.dist_from(metric.terminal(src));
        for (size_t i : idxs) {
          double d = dist[metric.terminal(cands[i].b)];
          if (!leq_tol(d, keep_factor * cands[i].w)) kept.push_back(cands[i]);
        }
      }
      std::sort(kept.begin(), kept.end(), [](const KeptEdge& p, const KeptEdge& q) {
        return std::tie(p.x, p.y, p.a, p.b) < std::tie(q.x, q.y, q.a, q.b);
      });
    }
    rep.kept_edges = static_cast<int>(kept.size());

    // Degrees over kept edges decide which clusters get oracle service.
    std::vector<int> deg(cur.size(), 0);
    for (const auto& ke : kept) {
      ++deg[ke.x];
      ++deg[ke.y];
    }
    std::vector<char> high(cur.size(), 0);
    std::vector<int> highs;
    for (size_t c = 0; c < cur.size(); ++c) {
      if (deg[c] + 1e-9 >= high_threshold) {
        high[c] = 1;
        highs.push_back(static_cast<int>(c));
      }
    }
    rep.high_nodes = static_cast<int>(highs.size());
    for (auto& ke : kept) ke.high_high = high[ke.x] && high[ke.y];

    // Buys the host shortest path between two terminals; returns the
    // weight of edges not previously in the spanner.
    auto buy_path = [&](int ai, int bi) -> double {
      double cost = 0.0;
      for (int id : metric.kappa_edges(ai, bi)) {
        if (!state.in_spanner[id]) {
          cost += g.edge(id).w;
          spanner.add(id);
          state.insert(id);
        }
      }
      return cost;
    };

    // Direct purchases for pairs touching a low-degree cluster.
    struct PathPurchase {
      int x, y;
      double cost;
    };
    std::vector<PathPurchase> step1;
    for (auto& ke : kept) {
      if (ke.high_high) continue;
      double cost = buy_path(ke.a, ke.b);
      ke.kappa = true;
      ke.conn = ke.w;
      ++rep.step1_edges;
      if (cost > 0.0) step1.push_back({ke.x, ke.y, cost});
      rep.edges_bought += cost;
    }

    // One oracle call serves all high-degree clusters at this scale.
    double oracle_cost = 0.0;
    if (!highs.empty()) {
      OracleQuery q;
      for (int c : highs) q.terminals.push_back(metric.terminal(cur[c].chosen));
      std::sort(q.terminals.begin(), q.terminals.end());
      q.ell = 2.0 * ell;
      q.epsilon = eps;
      Subgraph out = oracle.query(q);
      rep.oracle_calls = 1;
      for (int id : out.edge_ids) {
        if (!state.in_spanner[id]) {
          oracle_cost += g.edge(id).w;
          spanner.add(id);
          state.insert(id);
        }
      }
      rep.edges_bought += oracle_cost;
    }

    // The oracle promise only covers representative pairs that land in
    // its window; out-of-window pairs fall back to bought paths.
    double guard_cost = 0.0;
    {
      std::map<int, std::vector<size_t>> by_chosen;
      for (size_t i = 0; i < kept.size(); ++i)
        if (kept[i].high_high) by_chosen[cur[kept[i].x].chosen].push_back(i);
      for (auto& [src, idxs] : by_chosen) {
        auto dist = state.dist_from(metric.terminal(src));
        for (size_t i : idxs) {
          KeptEdge& ke = kept[i];
          int cx = cur[ke.x].chosen, cy = cur[ke.y].chosen;
          double dxy = metric.dist(cx, cy);
          double d = dist[metric.terminal(cy)];
          if (leq_tol(d, (1.0 + eps) * dxy)) {
            ke.conn = d;
          } else {
            guard_cost += buy_path(cx, cy);
            ++rep.guard_edges;
            ke.conn = dxy;
          }
        }
      }
      // Re-check the kept pairs themselves after connector repair.
      std::map<int, std::vector<size_t>> by_a;
      for (size_t i = 0; i < kept.size(); ++i)
        if (kept[i].high_high) by_a[kept[i].a].push_back(i);
      const double pair_factor = 1.0 + (12.0 * gg + 1.0) * eps;
      for (auto& [src, idxs] : by_a) {
        auto dist = state.dist_from(metric.terminal(src));
        for (size_t i : idxs) {
          KeptEdge& ke = kept[i];
          double d = dist[metric.terminal(ke.b)];
          if (!leq_tol(d, pair_factor * ke.w)) {
            guard_cost += buy_path(ke.a, ke.b);
            ++rep.guard_edges;
            ke.kappa = true;
            ke.conn = std::min(ke.conn, ke.w);
          }
        }
      }
      // Every pair bucketed at this level must already be served within
      // the final stretch budget; stragglers get their path outright.
      std::map<int, std::vector<const MetricEdge*>> audit;
      for (const auto& me : bucket) audit[me.a].push_back(&me);
      const double full_factor = 1.0 + (16.0 * gg + 1.0) * eps;
      for (auto& [src, edges] : audit) {
        auto dist = state.dist_from(metric.terminal(src));
        for (const MetricEdge* me : edges) {
          if (leq_tol(dist[metric.terminal(me->b)], full_factor * me->w))
            continue;
          guard_cost += buy_path(me->a, me->b);
          ++rep.guard_edges;
        }
      }
      rep.edges_bought += guard_cost;
    }

    // Cluster-tree adjacency over live pieces.
    std::vector<std::vector<std::pair<int, int>>> tadj(cur.size());
    for (int p = 0; p < piece_count; ++p) {
      if (!alive[p]) continue;
      const auto& pc = tree.pieces[p];
      int x = owner[pc.u], y = owner[pc.v];
      tadj[x].push_back({y, p});
      tadj[y].push_back({x, p});
    }
    for (auto& lst : tadj) std::sort(lst.begin(), lst.end());

    auto piece_w = [&](int pid) { return tree.pieces[pid].w; };

    // Diameter of a connected set of clusters inside the cluster tree.
    auto set_span = [&](const std::vector<int>& members) -> double {
      std::map<int, int> local;
      for (size_t h = 0; h < members.size(); ++h)
        local[members[h]] = static_cast<int>(h);
      std::vector<double> nd(members.size());
      std::vector<std::vector<std::pair<int, double>>> adj(members.size());
      for (size_t h = 0; h < members.size(); ++h) {
        nd[h] = cur[members[h]].d_book;
        for (auto [nbr, pid] : tadj[members[h]]) {
          auto it = local.find(nbr);
          if (it == local.end() || it->second <= static_cast<int>(h)) continue;
          adj[h].push_back({it->second, piece_w(pid)});
          adj[it->second].push_back({static_cast<int>(h), piece_w(pid)});
        }
      }
      return tree_diameter(nd, adj);
    };

    std::vector<char> marked(cur.size(), 0), step1_marked(cur.size(), 0);
    std::vector<int> proto_of(cur.size(), -1);
    std::vector<Proto> protos;

    std::vector<std::vector<std::pair<int, size_t>>> kadj(cur.size());
    for (size_t i = 0; i < kept.size(); ++i) {
      kadj[kept[i].x].push_back({kept[i].y, i});
      kadj[kept[i].y].push_back({kept[i].x, i});
    }
    for (auto& lst : kadj) std::sort(lst.begin(), lst.end());

    auto start_proto = [&](int phase) -> Proto& {
      protos.push_back(Proto{});
      protos.back().phase = phase;
      return protos.back();
    };
    auto adopt = [&](Proto& pr, int c) {
      pr.kids.push_back(c);
      marked[c] = 1;
      proto_of[c] = static_cast<int>(&pr - protos.data());
    };

    // Stage one: every dense cluster joins a hub group around some dense
    // seed whose whole kept-neighborhood was free.
    for (;;) {
      int x = -1;
      for (size_t c = 0; c < cur.size(); ++c) {
        if (marked[c] || !high[c]) continue;
        bool free_nbrs = true;
        for (auto [nbr, ei] : kadj[c]) {
          (void)ei;
          if (marked[nbr]) {
            free_nbrs = false;
            break;
          }
        }
        if (free_nbrs) {
          x = static_cast<int>(c);
          break;
        }
      }
      if (x < 0) break;
      Proto& pr = start_proto(1);
      adopt(pr, x);
      step1_marked[x] = 1;
      for (auto [nbr, ei] : kadj[x]) {
        if (marked[nbr]) continue;  // parallel kept edges cannot occur
        adopt(pr, nbr);
        step1_marked[nbr] = 1;
        pr.links.push_back({x, nbr, kept[ei].conn});
      }
      ++rep.clusters_phase1;
    }
    // Remaining dense clusters hook onto a seeded neighbor group.
    for (;;) {
      int y = -1;
      for (size_t c = 0; c < cur.size(); ++c)
        if (!marked[c] && high[c]) {
          y = static_cast<int>(c);
          break;
        }
      if (y < 0) break;
      int z = -1;
      size_t zedge = 0;
      for (auto [nbr, ei] : kadj[y])
        if (step1_marked[nbr]) {
          z = nbr;
          zedge = ei;
          break;
        }
      if (z < 0)
        throw invariant_violation("dense cluster with no seeded neighbor");
      Proto& pr = protos[proto_of[z]];
      adopt(pr, y);
      pr.links.push_back({y, z, kept[zedge].conn});
      for (auto [nbr, ei] : kadj[y]) {
        if (marked[nbr]) continue;
        adopt(pr, nbr);
        pr.links.push_back({y, nbr, kept[ei].conn});
      }
    }
    // Sparse clusters still touching a dense one join its group.
    for (;;) {
      int y = -1, z = -1;
      size_t zedge = 0;
      for (size_t c = 0; c < cur.size() && y < 0; ++c) {
        if (marked[c]) continue;
        for (auto [nbr, ei] : kadj[c])
          if (high[nbr]) {
            y = static_cast<int>(c);
            z = nbr;
            zedge = ei;
            break;
          }
      }
      if (y < 0) break;
      if (!marked[z])
        throw invariant_violation("dense cluster left unmarked");
      Proto& pr = protos[proto_of[z]];
      adopt(pr, y);
      pr.links.push_back({y, z, kept[zedge].conn});
    }

    // Stage two: grow branching subtrees of the cluster tree until their
    // weighted span reaches the level scale.
    {
      bool formed = true;
      while (formed) {
        formed = false;
        for (size_t x = 0; x < cur.size(); ++x) {
          if (marked[x]) continue;
          std::vector<int> seeds;
          for (auto [nbr, pid] : tadj[x]) {
            (void)pid;
            if (!marked[nbr]) seeds.push_back(nbr);
          }
          if (seeds.size() < 3) continue;
          std::vector<int> members{static_cast<int>(x), seeds[0], seeds[1],
                                   seeds[2]};
          std::sort(members.begin(), members.end());
          bool ok = false;
          for (;;) {
            if (set_span(members) >= ell) {
              ok = true;
              break;
            }
            // Weighted distance from x through the member subtree.
            std::map<int, double> dist;
            dist[static_cast<int>(x)] = cur[x].d_book;
            std::vector<int> stack{static_cast<int>(x)};
            while (!stack.empty()) {
              int u = stack.back();
              stack.pop_back();
              for (auto [nbr, pid] : tadj[u]) {
                if (!std::binary_search(members.begin(), members.end(), nbr))
                  continue;
                if (dist.count(nbr)) continue;
                dist[nbr] = dist[u] + piece_w(pid) + cur[nbr].d_book;
                stack.push_back(nbr);
              }
            }
            int pick = -1, pick_piece = -1;
            double pick_d = kInfD;
            for (int m : members) {
              for (auto [nbr, pid] : tadj[m]) {
                if (marked[nbr]) continue;
                if (std::binary_search(members.begin(), members.end(), nbr))
                  continue;
                double d = dist[m] + piece_w(pid) + cur[nbr].d_book;
                if (d < pick_d || (d == pick_d && nbr < pick)) {
                  pick = nbr;
                  pick_piece = pid;
                  pick_d = d;
                }
              }
            }
            (void)pick_piece;
            if (pick < 0) break;  // component exhausted below the scale
            members.insert(
                std::lower_bound(members.begin(), members.end(), pick), pick);
          }
          if (!ok) continue;
          Proto& pr = start_proto(2);
          for (int m : members) adopt(pr, m);
          ++rep.clusters_phase2;
          formed = true;
          break;
        }
      }
    }

    // Path utilities over unmarked residual components.
    auto component_of = [&](int c) {
      std::vector<int> comp{c};
      std::map<int, char> seen;
      seen[c] = 1;
      for (size_t h = 0; h < comp.size(); ++h)
        for (auto [nbr, pid] : tadj[comp[h]]) {
          (void)pid;
          if (marked[nbr] || seen.count(nbr)) continue;
          seen[nbr] = 1;
          comp.push_back(nbr);
        }
      std::sort(comp.begin(), comp.end());
      return comp;
    };
    auto unmarked_deg = [&](int c) {
      int d = 0;
      for (auto [nbr, pid] : tadj[c]) {
        (void)pid;
        if (!marked[nbr]) ++d;
      }
      return d;
    };
    // Orders a path component from its smaller endpoint.
    auto path_order = [&](const std::vector<int>& comp) {
      std::vector<int> out;
      if (comp.size() == 1) {
        out = comp;
        return out;
      }
      int start = -1;
      for (int c : comp)
        if (unmarked_deg(c) <= 1) {
          start = c;
          break;
        }
      if (start < 0)
        throw invariant_violation("residual component is not a path");
      int prev = -1, at = start;
      for (;;) {
        out.push_back(at);
        int nxt = -1;
        for (auto [nbr, pid] : tadj[at]) {
          (void)pid;
          if (marked[nbr] || nbr == prev) continue;
          nxt = nbr;
          break;
        }
        if (nxt < 0) break;
        prev = at;
        at = nxt;
      }
      if (out.size() != comp.size())
        throw invariant_violation("residual component is not a path");
      return out;
    };
    auto link_piece = [&](int c1, int c2) -> int {
      for (auto [nbr, pid] : tadj[c1])
        if (nbr == c2) return pid;
      throw invariant_violation("clusters are not tree neighbors");
    };
    // Weighted span of consecutive nodes dir[from..to] along a path.
    auto run_span = [&](const std::vector<int>& path, int from, int to) {
      double s = 0.0;
      for (int h = from; h <= to; ++h) {
        s += cur[path[h]].d_book;
        if (h > from) s += piece_w(link_piece(path[h - 1], path[h]));
      }
      return s;
    };

    // Stage three: pairs whose endpoints sit deep inside long residual
    // paths anchor a cluster made of minimal flanking subpaths.
    {
      bool formed = true;
      while (formed) {
        formed = false;
        for (const auto& ke : kept) {
          if (marked[ke.x] || marked[ke.y]) continue;
          auto compx = component_of(ke.x);
          bool pathx = true;
          for (int c : compx)
            if (unmarked_deg(c) > 2) pathx = false;
          if (!pathx) continue;
          auto px = path_order(compx);
          auto posx = static_cast<int>(
              std::find(px.begin(), px.end(), ke.x) - px.begin());
          const int lastx = static_cast<int>(px.size()) - 1;
          bool deepx = posx > 0 && posx < lastx &&
                       run_span(px, 0, posx - 1) >= ell &&
                       run_span(px, posx + 1, lastx) >= ell;
          if (!deepx) continue;

          const bool same_comp =
              std::binary_search(compx.begin(), compx.end(), ke.y);
          // Minimal flank of span >= ell walking outward from `at`.
          auto flank = [&](const std::vector<int>& path, int at, int dir,
                           int limit) -> std::vector<int> {
            std::vector<int> nodes;
            double s = 0.0;
            int h = at + dir;
            while (h >= 0 && h < static_cast<int>(path.size()) && h != limit) {
              nodes.push_back(path[h]);
              s += cur[path[h]].d_book;
              if (nodes.size() > 1)
                s += piece_w(link_piece(path[h - dir], path[h]));
              if (s >= ell) return nodes;
              h += dir;
            }
            return {};  // cannot reach the scale inside the bounds
          };

          if (same_comp) {
            auto posy = static_cast<int>(
                std::find(px.begin(), px.end(), ke.y) - px.begin());
            int lo = posx, hi = posy;
            if (lo > hi) std::swap(lo, hi);
            bool deepy = run_span(px, 0, hi - 1) >= ell &&
                         hi < lastx &&
                         run_span(px, hi + 1, lastx) >= ell &&
                         run_span(px, 0, lo - 1) >= ell &&
                         run_span(px, lo + 1, lastx) >= ell;
            if (!deepy || hi == lo) continue;
            auto qlo = flank(px, lo, -1, -1);
            auto qhi = flank(px, hi, +1, static_cast<int>(px.size()));
            if (qlo.empty() || qhi.empty()) continue;
            auto plo = flank(px, lo, +1, hi);
            auto phi = flank(px, hi, -1, lo);
            Proto& pr = start_proto(3);
            adopt(pr, px[lo]);
            adopt(pr, px[hi]);
            auto take_run = [&](const std::vector<int>& nodes, int anchor) {
              int prev = anchor;
              for (int c : nodes) {
                adopt(pr, c);
                pr.links.push_back({prev, c, piece_w(link_piece(prev, c))});
                prev = c;
              }
            };
            take_run(qlo, px[lo]);
            take_run(qhi, px[hi]);
            bool disjoint = !plo.empty() && !phi.empty();
            if (disjoint) {
              std::vector<char> inplo(cur.size(), 0);
              for (int c : plo) inplo[c] = 1;
              for (int c : phi)
                if (inplo[c]) disjoint = false;
            }
            if (disjoint) {
              take_run(plo, px[lo]);
              take_run(phi, px[hi]);
            } else {
              // Middle too short to split: absorb it whole; the pair edge
              // closes the cycle.
              std::vector<int> mid(px.begin() + lo + 1, px.begin() + hi);
              take_run(mid, px[lo]);
              if (!mid.empty())
                pr.links.push_back({mid.back(), px[hi],
                                    piece_w(link_piece(mid.back(), px[hi]))});
            }
            pr.links.push_back({px[lo], px[hi], ke.conn});
          } else {
            auto compy = component_of(ke.y);
            bool pathy = true;
            for (int c : compy)
              if (unmarked_deg(c) > 2) pathy = false;
            if (!pathy) continue;
            auto py = path_order(compy);
            auto posy = static_cast<int>(
                std::find(py.begin(), py.end(), ke.y) - py.begin());
            const int lasty = static_cast<int>(py.size()) - 1;
            bool deepy = posy > 0 && posy < lasty &&
                         run_span(py, 0, posy - 1) >= ell &&
                         run_span(py, posy + 1, lasty) >= ell;
            if (!deepy) continue;
            auto qx = flank(px, posx, -1, -1);
            auto pxr = flank(px, posx, +1, static_cast<int>(px.size()));
            auto qy = flank(py, posy, -1, -1);
            auto pyr = flank(py, posy, +1, static_cast<int>(py.size()));
            if (qx.empty() || pxr.empty() || qy.empty() || pyr.empty())
              continue;
            Proto& pr = start_proto(3);
            adopt(pr, ke.x);
            adopt(pr, ke.y);
            auto take_run = [&](const std::vector<int>& nodes, int anchor) {
              int prev = anchor;
              for (int c : nodes) {
                adopt(pr, c);
                pr.links.push_back({prev, c, piece_w(link_piece(prev, c))});
                prev = c;
              }
            };
            take_run(qx, ke.x);
            take_run(pxr, ke.x);
            take_run(qy, ke.y);
            take_run(pyr, ke.y);
            pr.links.push_back({ke.x, ke.y, ke.conn});
          }
          ++rep.clusters_phase3;
          formed = true;
          break;
        }
      }
    }

    // Stage four: leftovers either augment a neighboring group or split
    // into path segments of span at least the level scale.
    bool stop_level = false;
    {
      std::vector<int> heads;
      std::vector<char> seen(cur.size(), 0);
      for (size_t c = 0; c < cur.size(); ++c) {
        if (marked[c] || seen[c]) continue;
        auto comp = component_of(static_cast<int>(c));
        for (int m : comp) seen[m] = 1;
        heads.push_back(static_cast<int>(c));
      }
      for (int head : heads) {
        if (marked[head]) continue;
        auto comp = component_of(head);
        double span = set_span(comp);
        if (leq_tol(span, ell)) {
          // Attach to the neighboring group behind the smallest piece.
          int best_piece = -1, target = -1;
          for (int m : comp)
            for (auto [nbr, pid] : tadj[m]) {
              if (!marked[nbr]) continue;
              if (protos[proto_of[nbr]].phase > 3) continue;
              if (best_piece == -1 || pid < best_piece) {
                best_piece = pid;
                target = proto_of[nbr];
              }
            }
          if (target < 0) {
            if (!protos.empty())
              throw invariant_violation("residual fragment has no anchor");
            stop_level = true;
            break;
          }
          Proto& pr = protos[target];
          std::vector<char> inc(cur.size(), 0);
          for (int m : comp) inc[m] = 1;
          for (int m : comp)
            for (auto [nbr, pid] : tadj[m])
              if (inc[nbr] && nbr > m)
                pr.links.push_back({m, nbr, piece_w(pid)});
          const auto& bp = tree.pieces[best_piece];
          int bu = owner[bp.u], bv = owner[bp.v];
          pr.links.push_back({bu, bv, bp.w});
          for (int m : comp) adopt(pr, m);
        } else {
          for (int m : comp)
            if (unmarked_deg(m) > 2)
              throw invariant_violation("wide residual component");
          auto path = path_order(comp);
          std::vector<std::pair<int, int>> segs;
          int from = 0;
          double s = 0.0;
          for (int h = 0; h < static_cast<int>(path.size()); ++h) {
            s += cur[path[h]].d_book;
            if (h > from) s += piece_w(link_piece(path[h - 1], path[h]));
            if (s >= ell) {
              segs.push_back({from, h});
              from = h + 1;
              s = 0.0;
            }
          }
          if (from < static_cast<int>(path.size())) {
            if (segs.empty())
              throw invariant_violation("long component yields no segment");
            segs.back().second = static_cast<int>(path.size()) - 1;
          }
          for (auto [lo, hi] : segs) {
            Proto& pr = start_proto(4);
            for (int h = lo; h <= hi; ++h) {
              adopt(pr, path[h]);
              if (h > lo)
                pr.links.push_back({path[h - 1], path[h],
                                    piece_w(link_piece(path[h - 1], path[h]))});
            }
            ++rep.clusters_phase4;
          }
        }
      }
    }

    rep.sparse_tail =
        rep.clusters_phase1 + rep.clusters_phase2 + rep.clusters_phase3 == 0;

    if (stop_level) {
      // The whole residue fits under the level scale: cluster set stays,
      // purchases are charged to the reserve, later buckets must be empty.
      for (const auto& pp : step1)
        reserve_spend(credit_from(pp.cost), "tail path purchase");
      reserve_spend(credit_from(oracle_cost), "tail oracle purchase");
      reserve_spend(credit_from(guard_cost), "guard purchase");
      rep.reserve_topups = pending_topups;
      pending_topups = 0;
      reports.push_back(rep);
      for (int rest = level + 1; rest <= top; ++rest)
        if (!bucket_at(rest).empty())
          throw invariant_violation("bucketed pair beyond the stop level");
      break;
    }

    for (size_t c = 0; c < cur.size(); ++c)
      if (!marked[c])
        throw invariant_violation("cluster left out of the regrouping");

    // Settle the new groups: each collects credit proportional to its
    // bookkeeping diameter, first from swallowed pieces, then children.
    std::vector<double> proto_diam(protos.size(), 0.0);
    std::vector<int> proto_acct(protos.size(), -1);
    for (size_t pi = 0; pi < protos.size(); ++pi) {
      Proto& pr = protos[pi];
      std::sort(pr.kids.begin(), pr.kids.end());
      std::map<int, int> local;
      for (size_t h = 0; h < pr.kids.size(); ++h)
        local[pr.kids[h]] = static_cast<int>(h);
      std::vector<double> nd(pr.kids.size());
      for (size_t h = 0; h < pr.kids.size(); ++h)
        nd[h] = cur[pr.kids[h]].d_book;
      std::vector<std::tuple<int, int, double>> links;
      for (const auto& [a, b, w] : pr.links)
        links.push_back({local.at(a), local.at(b), w});
      for (int kid : pr.kids)
        for (auto [nbr, pid] : tadj[kid])
          if (nbr > kid && local.count(nbr))
            links.push_back({local.at(kid), local.at(nbr), piece_w(pid)});
      proto_diam[pi] = struct_diameter(nd, links);
      if (opt.check_invariants &&
          !leq_tol(proto_diam[pi], gg * ell * (1.0 + 10.0 * eps)))
        throw invariant_violation("group diameter exceeds the level budget");

      proto_acct[pi] = ledger.open_account(
          "c" + tag + "." + std::to_string(level) + "." + std::to_string(pi));
      Credit need =
          rate_c * credit_from(std::max(proto_diam[pi], ell / 2.0));
      Credit remaining = need;
      for (int kid : pr.kids) {
        for (auto [nbr, pid] : tadj[kid]) {
          if (remaining <= 0) break;
          if (nbr <= kid || !local.count(nbr) || !alive[pid]) continue;
          remaining -= ledger.transfer_up_to(piece_acct[pid], proto_acct[pi],
                                             remaining, "group funding");
        }
      }
      if (remaining > 0) {
        std::vector<std::pair<Credit, int>> kids_bal;
        for (int kid : pr.kids)
          kids_bal.push_back({ledger.balance(cur[kid].account), kid});
        std::sort(kids_bal.begin(), kids_bal.end(),
                  [](const auto& p, const auto& q) {
                    if (p.first != q.first) return p.first > q.first;
                    return p.second < q.second;
                  });
        for (const auto& [bal, kid] : kids_bal) {
          (void)bal;
          if (remaining <= 0) break;
          remaining -= ledger.transfer_up_to(cur[kid].account, proto_acct[pi],
                                             remaining, "group funding");
        }
      }
      if (remaining > 0)
        reserve_transfer(proto_acct[pi], remaining, "group funding");
    }

    // Pay for this level's purchases out of settlement leftovers.
    auto spend_siblings = [&](int member, Credit remaining,
                              const char* memo) -> Credit {
      const Proto& pr = protos[proto_of[member]];
      std::vector<std::pair<Credit, int>> sibs;
      for (int kid : pr.kids)
        if (kid != member)
          sibs.push_back({ledger.balance(cur[kid].account), kid});
      std::sort(sibs.begin(), sibs.end(), [](const auto& p, const auto& q) {
        if (p.first != q.first) return p.first > q.first;
        return p.second < q.second;
      });
      for (const auto& [bal, kid] : sibs) {
        (void)bal;
        if (remaining <= 0) break;
        remaining = spend_up_to(cur[kid].account, remaining, memo);
      }
      return remaining;
    };

    if (rep.sparse_tail) {
      for (const auto& pp : step1)
        reserve_spend(credit_from(pp.cost), "tail path purchase");
    } else {
      for (const auto& pp : step1) {
        Credit remaining = credit_from(pp.cost);
        remaining = spend_up_to(cur[pp.x].account, remaining, "path purchase");
        remaining = spend_up_to(cur[pp.y].account, remaining, "path purchase");
        remaining = spend_siblings(pp.x, remaining, "path purchase");
        remaining = spend_siblings(pp.y, remaining, "path purchase");
        if (remaining > 0) {
          // Breadth-first raid over the cluster tree for leftovers held
          // by members of well-funded groups.
          std::vector<char> vis(cur.size(), 0);
          std::deque<int> bfs{pp.x, pp.y};
          vis[pp.x] = vis[pp.y] = 1;
          while (!bfs.empty() && remaining > 0) {
            int at = bfs.front();
            bfs.pop_front();
            for (auto [nbr, pid] : tadj[at]) {
              (void)pid;
              if (vis[nbr]) continue;
              vis[nbr] = 1;
              bfs.push_back(nbr);
              if (remaining <= 0) continue;
              if (protos[proto_of[nbr]].phase > 3) continue;
              Credit before = remaining;
              remaining =
                  spend_up_to(cur[nbr].account, remaining, "path purchase");
              if (remaining < before) ++rep.steal_events;
            }
          }
        }
        if (remaining > 0) reserve_spend(remaining, "path purchase");
      }
    }
    if (oracle_cost > 0.0) {
      Credit total = credit_from(oracle_cost);
      Credit share = total / Credit(static_cast<long>(highs.size()));
      for (int h : highs) {
        Credit remaining = share;
        remaining = spend_up_to(cur[h].account, remaining, "oracle purchase");
        remaining = spend_siblings(h, remaining, "oracle purchase");
        if (remaining > 0) reserve_spend(remaining, "oracle purchase");
      }
    }
    if (guard_cost > 0.0)
      reserve_spend(credit_from(guard_cost), "guard purchase");

    // Retire the old generation and install the new clusters.
    Credit residual = 0;
    for (const auto& c : cur) residual += ledger.balance(c.account);
    std::vector<Clus> next;
    next.reserve(protos.size());
    for (size_t pi = 0; pi < protos.size(); ++pi) {
      Clus c;
      for (int kid : protos[pi].kids) {
        c.nodes.insert(c.nodes.end(), cur[kid].nodes.begin(),
                       cur[kid].nodes.end());
        c.terms.insert(c.terms.end(), cur[kid].terms.begin(),
                       cur[kid].terms.end());
      }
      std::sort(c.nodes.begin(), c.nodes.end());
      std::sort(c.terms.begin(), c.terms.end());
      c.chosen = c.terms.empty() ? -1 : c.terms[0];
      c.d_book = proto_diam[pi];
      c.account = proto_acct[pi];
      next.push_back(std::move(c));
    }
    cur = std::move(next);
    for (size_t ci = 0; ci < cur.size(); ++ci)
      for (int u : cur[ci].nodes) owner[u] = static_cast<int>(ci);
    for (int p = 0; p < piece_count; ++p) {
      if (!alive[p]) continue;
      const auto& pc = tree.pieces[p];
      if (owner[pc.u] == owner[pc.v]) {
        alive[p] = 0;
        residual += ledger.balance(piece_acct[p]);
      }
    }
    rep.ledger_residual = credit_to_double(residual);
    rep.reserve_topups = pending_topups;
    pending_topups = 0;
    reports.push_back(rep);
  }

  return reports;
}

}  // namespace sforge
