#include "sforge/subset_tsp.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <iterator>
#include <limits>
#include <map>
#include <utility>

#include "sforge/errors.hpp"
#include "sforge/graph_io.hpp"
#include "sforge/partitions.hpp"
#include "sforge/report.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {
namespace {

struct Entry {
  double weight = 0.0;
  std::vector<int> witness;  // sorted modified-graph edge ids
};

// Degree-parity labels per bag position (0 untouched, 1 odd, 2 even)
// plus the partition of labelled positions, in bag order.
using Key = std::pair<std::vector<int>, std::vector<int>>;
using Table = std::map<Key, Entry>;

bool entry_better(const Entry& a, const Entry& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.witness < b.witness;
}

void upsert(Table& t, Key k, Entry e) {
  auto it = t.find(k);
  if (it == t.end()) {
    t.emplace(std::move(k), std::move(e));
  } else if (entry_better(e, it->second)) {
    it->second = std::move(e);
  }
}

int live_rank(const std::vector<int>& labels, int pos) {
  int r = 0;
  for (int i = 0; i < pos; ++i) {
    if (labels[static_cast<size_t>(i)] != 0) ++r;
  }
  return r;
}

int bag_pos(const std::vector<int>& bag, int v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) -
                          bag.begin());
}

// Whether the witness already is a complete answer: one even-degree
// component whose edges touch every terminal.
bool final_feasible(const WeightedGraph& m, const std::vector<int>& terminals,
                    const std::vector<int>& witness) {
  if (witness.empty()) return false;
  std::map<int, int> deg;
  std::map<int, std::vector<int>> adj;
  for (int id : witness) {
    const Edge& e = m.edge(id);
    ++deg[e.u];
    ++deg[e.v];
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (const auto& [v, d] : deg) {
    if (d % 2 != 0) return false;
  }
  for (int t : terminals) {
    auto it = deg.find(t);
    if (it == deg.end() || it->second < 1) return false;
  }
  std::map<int, char> seen;
  std::deque<int> q{deg.begin()->first};
  seen[q.front()] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj[x]) {
      if (!seen.count(y)) {
        seen[y] = 1;
        q.push_back(y);
      }
    }
  }
  return seen.size() == deg.size();
}

void reduce_table(Table& table) {
  if (table.size() <= 1) return;
  Table out;
  auto it = table.begin();
  while (it != table.end()) {
    auto jt = it;
    std::vector<Partition> parts;
    std::vector<double> ws;
    std::vector<Table::iterator> slots;
    while (jt != table.end() && jt->first.first == it->first.first) {
      parts.push_back(jt->first.second);
      ws.push_back(jt->second.weight);
      slots.push_back(jt);
      ++jt;
    }
    if (slots.size() == 1) {
      out.insert(*slots[0]);
    } else {
      const int q = static_cast<int>(parts[0].size());
      for (int ki : reduce_representatives(parts, ws, q)) {
        out.insert(*slots[static_cast<size_t>(ki)]);
      }
    }
    it = jt;
  }
  table = std::move(out);
}

}  // namespace

std::string TourResult::to_json() const {
  using nlohmann::json;
  json out;
  out["schema"] = 1;
  out["weight"] = round9(weight);
  out["width_used"] = width_used;
  out["table_peak"] = table_peak;
  json arr = json::array();
  for (const TourEdge& te : edges) {
    arr.push_back({te.u, te.v, te.mult});
  }
  out["edges"] = arr;
  return out.dump(2);
}

TourResult subset_tsp_dp(const WeightedGraph& g,
                         const std::vector<int>& terminals,
                         const TreeDecomposition& td,
                         const SubsetTspOptions& opt) {
  const std::vector<int> terms = normalize_terminals(g, terminals);
  const int k = static_cast<int>(terms.size());
  if (k <= 1) return {0.0, {}, -1, 0};
  const std::vector<int> comp = g.component_ids();
  for (int t : terms) {
    if (comp[static_cast<size_t>(t)] != comp[static_cast<size_t>(terms[0])]) {
      throw input_error("terminals sit in different components");
    }
  }

  // Parallel copies cover edge multiplicities: an optimal closed walk
  // never needs an edge more than max(2, k-1) times.
  const int copies = std::max(2, k - 1);
  const int n = g.vertex_count();
  WeightedGraph m(n + g.edge_count() * copies);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    for (int c = 0; c < copies; ++c) {
      const int mid = n + e * copies + c;
      m.add_edge(ed.u, mid, ed.w / 2.0);
      m.add_edge(mid, ed.v, ed.w / 2.0);
    }
  }
  const NiceTreeDecomposition nice = make_nice(expand_td(td, g, copies), m);
  TourResult res;
  res.width_used = nice.width();
  if (res.width_used > opt.width_cap) {
    throw input_error("decomposition width " + std::to_string(res.width_used) +
                      " exceeds the cap " + std::to_string(opt.width_cap));
  }

  std::vector<Table> tables(nice.nodes.size());
  Entry best;
  bool found = false;
  auto offer = [&](const Entry& e) {
    if (!found || entry_better(e, best)) {
      best = e;
      found = true;
    }
  };

  for (int x : nice.topo_order()) {
    const NiceNode& nd = nice.nodes[static_cast<size_t>(x)];
    Table& table = tables[static_cast<size_t>(x)];
    switch (nd.kind) {
      case NiceKind::kLeaf:
        table.emplace(Key{{}, {}}, Entry{});
        break;
      case NiceKind::kIntroduceVertex: {
        Table& kid = tables[static_cast<size_t>(nd.left)];
        const int p = bag_pos(nd.bag, nd.vertex);
        for (auto& [key, ent] : kid) {
          std::vector<int> labels = key.first;
          labels.insert(labels.begin() + p, 0);
          upsert(table, {std::move(labels), key.second}, std::move(ent));
        }
        kid.clear();
        break;
      }
      case NiceKind::kForget: {
        Table& kid = tables[static_cast<size_t>(nd.left)];
        const std::vector<int>& kid_bag =
            nice.nodes[static_cast<size_t>(nd.left)].bag;
        const int p = bag_pos(kid_bag, nd.vertex);
        const bool is_term =
            std::binary_search(terms.begin(), terms.end(), nd.vertex);
        for (auto& [key, ent] : kid) {
          const int label = key.first[static_cast<size_t>(p)];
          if (label == 1) continue;  // odd degree can never recover
          if (label == 0) {
            if (is_term) continue;  // the walk misses this terminal
            std::vector<int> labels = key.first;
            labels.erase(labels.begin() + p);
            upsert(table, {std::move(labels), key.second}, std::move(ent));
            continue;
          }
          const int r = live_rank(key.first, p);
          const Partition& part = key.second;
          bool singleton = true;
          for (size_t i = 0; i < part.size(); ++i) {
            if (static_cast<int>(i) != r &&
                part[i] == part[static_cast<size_t>(r)]) {
              singleton = false;
              break;
            }
          }
          if (singleton) {
            // The component loses its last bag contact; it is either a
            // finished answer or a dead end.
            if (final_feasible(m, terms, ent.witness)) offer(ent);
            continue;
          }
          std::vector<int> labels = key.first;
          labels.erase(labels.begin() + p);
          upsert(table, {std::move(labels), partition_remove(part, r)},
                 std::move(ent));
        }
        kid.clear();
        break;
      }
      case NiceKind::kIntroduceEdge: {
        Table& kid = tables[static_cast<size_t>(nd.left)];
        const Edge& me = m.edge(nd.edge);
        const int pu = bag_pos(nd.bag, me.u);
        const int pv = bag_pos(nd.bag, me.v);
        for (auto& [key, ent] : kid) {
          std::vector<int> labels = key.first;
          Partition part = key.second;
          if (labels[static_cast<size_t>(pu)] == 0) {
            part = partition_insert(part, live_rank(labels, pu));
          }
          labels[static_cast<size_t>(pu)] =
              labels[static_cast<size_t>(pu)] % 2 + 1;
          if (labels[static_cast<size_t>(pv)] == 0) {
            part = partition_insert(part, live_rank(labels, pv));
          }
          labels[static_cast<size_t>(pv)] =
              labels[static_cast<size_t>(pv)] % 2 + 1;
          part = partition_union(part, live_rank(labels, pu),
                                 live_rank(labels, pv));
          Entry used;
          used.weight = ent.weight + me.w;
          used.witness = ent.witness;
          used.witness.insert(std::lower_bound(used.witness.begin(),
                                               used.witness.end(), nd.edge),
                              nd.edge);
          upsert(table, {std::move(labels), std::move(part)}, std::move(used));
          upsert(table, key, std::move(ent));
        }
        kid.clear();
        break;
      }
      case NiceKind::kJoin: {
        Table& lhs = tables[static_cast<size_t>(nd.left)];
        Table& rhs = tables[static_cast<size_t>(nd.right)];
        const int nb = static_cast<int>(nd.bag.size());
        for (const auto& [ka, ea] : lhs) {
          for (const auto& [kb, eb] : rhs) {
            std::vector<int> labels(static_cast<size_t>(nb));
            for (int i = 0; i < nb; ++i) {
              const int la = ka.first[static_cast<size_t>(i)];
              const int lb = kb.first[static_cast<size_t>(i)];
              labels[static_cast<size_t>(i)] =
                  la == 0 ? lb : (lb == 0 ? la : ((la + lb) % 2 ? 1 : 2));
            }
            Partition pa = ka.second;
            Partition pb = kb.second;
            int idx = 0;
            for (int i = 0; i < nb; ++i) {
              if (labels[static_cast<size_t>(i)] == 0) continue;
              if (ka.first[static_cast<size_t>(i)] == 0) {
                pa = partition_insert(pa, idx);
              }
              if (kb.first[static_cast<size_t>(i)] == 0) {
                pb = partition_insert(pb, idx);
              }
              ++idx;
            }
            Entry ent;
            ent.weight = ea.weight + eb.weight;
            ent.witness = [&] {
              std::vector<int> w;
              w.reserve(ea.witness.size() + eb.witness.size());
              std::merge(ea.witness.begin(), ea.witness.end(),
                         eb.witness.begin(), eb.witness.end(),
                         std::back_inserter(w));
              return w;
            }();
            if (opt.check_invariants &&
                std::adjacent_find(ent.witness.begin(), ent.witness.end()) !=
                    ent.witness.end()) {
              throw invariant_violation("joined walks share an edge");
            }
            upsert(table, {std::move(labels), partition_join(pa, pb)},
                   std::move(ent));
          }
        }
        lhs.clear();
        rhs.clear();
        break;
      }
    }
    if (opt.reduce_tables) reduce_table(table);
    res.table_peak =
        std::max(res.table_peak, static_cast<long>(table.size()));
  }

  if (!found) {
    throw invariant_violation("no feasible closed walk was found");
  }
  res.weight = best.weight;
  std::map<int, int> half_count;  // per parallel copy
  for (int me : best.witness) ++half_count[me / 2];
  std::map<int, int> mult;  // per host edge
  for (const auto& [pair_id, c] : half_count) {
    if (c != 2) {
      throw invariant_violation("tour witness uses a dangling half edge");
    }
    ++mult[pair_id / copies];
  }
  double total = 0.0;
  for (const auto& [e, mu] : mult) {
    const Edge& ed = g.edge(e);
    res.edges.push_back({e, ed.u, ed.v, ed.w, mu});
    total += ed.w * mu;
  }
  if (opt.check_invariants && !close_tol(total, res.weight)) {
    throw invariant_violation("tour weight does not match its edge list");
  }
  return res;
}

TourResult subset_tsp_dp(const WeightedGraph& g,
                         const std::vector<int>& terminals,
                         const SubsetTspOptions& opt) {
  return subset_tsp_dp(g, terminals, min_fill_decomposition(g), opt);
}

double held_karp_tour(const WeightedGraph& g,
                      const std::vector<int>& terminals) {
  const std::vector<int> terms = normalize_terminals(g, terminals);
  const int k = static_cast<int>(terms.size());
  if (k <= 1) return 0.0;
  if (k > 20) throw input_error("exact search supports at most 20 terminals");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const ShortestPathTree spt = dijkstra(g, terms[static_cast<size_t>(i)]);
    d[static_cast<size_t>(i)].resize(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
      const double dij = spt.dist[static_cast<size_t>(terms[static_cast<size_t>(j)])];
      if (!(dij < inf)) {
        throw input_error("terminals sit in different components");
      }
      d[static_cast<size_t>(i)][static_cast<size_t>(j)] = dij;
    }
  }
  if (k == 2) return 2.0 * d[0][1];
  const int full = (1 << (k - 1)) - 1;
  std::vector<std::vector<double>> dp(
      static_cast<size_t>(full + 1),
      std::vector<double>(static_cast<size_t>(k - 1), inf));
  for (int j = 0; j < k - 1; ++j) {
    dp[static_cast<size_t>(1 << j)][static_cast<size_t>(j)] =
        d[0][static_cast<size_t>(j + 1)];
  }
  for (int mask = 1; mask <= full; ++mask) {
    for (int j = 0; j < k - 1; ++j) {
      const double cur = dp[static_cast<size_t>(mask)][static_cast<size_t>(j)];
      if (!(cur < inf) || !(mask & (1 << j))) continue;
      for (int j2 = 0; j2 < k - 1; ++j2) {
        if (mask & (1 << j2)) continue;
        double& slot =
            dp[static_cast<size_t>(mask | (1 << j2))][static_cast<size_t>(j2)];
        const double cand = cur + d[static_cast<size_t>(j + 1)][static_cast<size_t>(j2 + 1)];
        if (cand < slot) slot = cand;
      }
    }
  }
  double ans = inf;
  for (int j = 0; j < k - 1; ++j) {
    ans = std::min(ans, dp[static_cast<size_t>(full)][static_cast<size_t>(j)] +
                            d[static_cast<size_t>(j + 1)][0]);
  }
  return ans;
}

}  // namespace sforge
