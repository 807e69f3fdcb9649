#include "sforge/tree_decomposition.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "sforge/errors.hpp"

namespace sforge {
namespace {

bool bag_has(const std::vector<int>& bag, int v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

std::vector<int> bag_minus(const std::vector<int>& bag, int v) {
  std::vector<int> out;
  out.reserve(bag.size());
  for (int x : bag) {
    if (x != v) out.push_back(x);
  }
  return out;
}

std::vector<int> bag_plus(const std::vector<int>& bag, int v) {
  std::vector<int> out = bag;
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

}  // namespace

int TreeDecomposition::width() const {
  int best = -1;
  for (const auto& b : bags) best = std::max(best, static_cast<int>(b.size()) - 1);
  return best;
}

void TreeDecomposition::validate(const WeightedGraph& g) const {
  const int nb = static_cast<int>(bags.size());
  if (nb == 0) throw invariant_violation("decomposition has no bags");
  for (const auto& b : bags) {
    if (!std::is_sorted(b.begin(), b.end()) ||
        std::adjacent_find(b.begin(), b.end()) != b.end()) {
      throw invariant_violation("bag is not a sorted vertex set");
    }
    for (int v : b) {
      if (v < 0 || v >= g.vertex_count()) {
        throw invariant_violation("bag vertex out of range");
      }
    }
  }
  if (static_cast<int>(links.size()) != nb - 1) {
    throw invariant_violation("bag links do not form a tree");
  }
  std::vector<std::vector<int>> nbr(static_cast<size_t>(nb));
  for (const auto& [a, b] : links) {
    if (a < 0 || a >= nb || b < 0 || b >= nb || a == b) {
      throw invariant_violation("bag link out of range");
    }
    nbr[static_cast<size_t>(a)].push_back(b);
    nbr[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<char> seen(static_cast<size_t>(nb), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    ++reached;
    for (int y : nbr[static_cast<size_t>(x)]) {
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        q.push_back(y);
      }
    }
  }
  if (reached != nb) throw invariant_violation("bag links do not form a tree");

  std::vector<char> covered(static_cast<size_t>(g.vertex_count()), 0);
  for (const auto& b : bags) {
    for (int v : b) covered[static_cast<size_t>(v)] = 1;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!covered[static_cast<size_t>(v)]) {
      throw invariant_violation("vertex missing from every bag");
    }
  }
  for (const Edge& e : g.edges()) {
    bool found = false;
    for (const auto& b : bags) {
      if (bag_has(b, e.u) && bag_has(b, e.v)) {
        found = true;
        break;
      }
    }
    if (!found) throw invariant_violation("edge endpoints share no bag");
  }
  // Connectivity of each vertex's bag set: count, per vertex, the bags
  // holding it and the links internal to that set; a connected subtree
  // has exactly count-1 internal links, and a forest strictly fewer.
  std::vector<int> cnt(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<int> internal(static_cast<size_t>(g.vertex_count()), 0);
  for (const auto& b : bags) {
    for (int v : b) ++cnt[static_cast<size_t>(v)];
  }
  for (const auto& [a, b] : links) {
    for (int v : bags[static_cast<size_t>(a)]) {
      if (bag_has(bags[static_cast<size_t>(b)], v)) {
        ++internal[static_cast<size_t>(v)];
      }
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (cnt[static_cast<size_t>(v)] > 0 &&
        internal[static_cast<size_t>(v)] != cnt[static_cast<size_t>(v)] - 1) {
      throw invariant_violation("vertex bags are not connected in the tree");
    }
  }
}

TreeDecomposition min_fill_decomposition(const WeightedGraph& g) {
  const int n = g.vertex_count();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  std::vector<std::set<int>> nb(static_cast<size_t>(n));
  for (const Edge& e : g.edges()) {
    nb[static_cast<size_t>(e.u)].insert(e.v);
    nb[static_cast<size_t>(e.v)].insert(e.u);
  }
  std::vector<char> gone(static_cast<size_t>(n), 0);
  std::vector<int> pos(static_cast<size_t>(n), -1);
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  td.bags.resize(static_cast<size_t>(n));
  std::vector<std::vector<int>> elim_nbrs(static_cast<size_t>(n));

  for (int round = 0; round < n; ++round) {
    int best = -1;
    long best_fill = 0;
    size_t best_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (gone[static_cast<size_t>(v)]) continue;
      const auto& s = nb[static_cast<size_t>(v)];
      long fill = 0;
      for (auto it = s.begin(); it != s.end(); ++it) {
        auto jt = it;
        for (++jt; jt != s.end(); ++jt) {
          if (!nb[static_cast<size_t>(*it)].count(*jt)) ++fill;
        }
      }
      if (best < 0 || fill < best_fill ||
          (fill == best_fill && s.size() < best_deg)) {
        best = v;
        best_fill = fill;
        best_deg = s.size();
      }
    }
    const int v = best;
    pos[static_cast<size_t>(v)] = round;
    order.push_back(v);
    std::vector<int> around(nb[static_cast<size_t>(v)].begin(),
                            nb[static_cast<size_t>(v)].end());
    elim_nbrs[static_cast<size_t>(v)] = around;
    std::vector<int> bag = around;
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    td.bags[static_cast<size_t>(v)] = std::move(bag);
    for (size_t i = 0; i < around.size(); ++i) {
      for (size_t j = i + 1; j < around.size(); ++j) {
        nb[static_cast<size_t>(around[i])].insert(around[j]);
        nb[static_cast<size_t>(around[j])].insert(around[i]);
      }
      nb[static_cast<size_t>(around[i])].erase(v);
    }
    nb[static_cast<size_t>(v)].clear();
    gone[static_cast<size_t>(v)] = 1;
  }

  // Bag of v hangs off the bag of its earliest-eliminated residual
  // neighbor; vertices eliminated with no remaining neighbors start new
  // roots, chained afterwards so the result is one tree.
  std::vector<int> roots;
  for (int v = 0; v < n; ++v) {
    int parent = -1;
    int parent_pos = n;
    for (int u : elim_nbrs[static_cast<size_t>(v)]) {
      if (pos[static_cast<size_t>(u)] < parent_pos) {
        parent_pos = pos[static_cast<size_t>(u)];
        parent = u;
      }
    }
    if (parent >= 0) {
      td.links.push_back({v, parent});
    } else {
      roots.push_back(v);
    }
  }
  for (size_t i = 1; i < roots.size(); ++i) {
    td.links.push_back({roots[i - 1], roots[i]});
  }
  return td;
}

TreeDecomposition read_pace_td(std::istream& in) {
  TreeDecomposition td;
  int declared_bags = -1;
  std::string line;
  std::vector<char> seen_bag;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head.empty() || head == "c") continue;
    if (head == "s") {
      std::string kind;
      int width1 = 0, n = 0;
      if (!(ls >> kind >> declared_bags >> width1 >> n) || kind != "td" ||
          declared_bags < 0) {
        throw input_error("malformed solution line in decomposition file");
      }
      td.bags.assign(static_cast<size_t>(declared_bags), {});
      seen_bag.assign(static_cast<size_t>(declared_bags), 0);
      continue;
    }
    if (head == "b") {
      if (declared_bags < 0) {
        throw input_error("bag line before the solution line");
      }
      int id = 0;
      if (!(ls >> id) || id < 1 || id > declared_bags) {
        throw input_error("bag id out of range in decomposition file");
      }
      if (seen_bag[static_cast<size_t>(id - 1)]) {
        throw input_error("duplicate bag id in decomposition file");
      }
      seen_bag[static_cast<size_t>(id - 1)] = 1;
      std::vector<int> bag;
      int v = 0;
      while (ls >> v) {
        if (v < 1) throw input_error("bag vertex out of range");
        bag.push_back(v - 1);
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      td.bags[static_cast<size_t>(id - 1)] = std::move(bag);
      continue;
    }
    // Remaining lines are bag tree edges "<i> <j>".
    if (declared_bags < 0) {
      throw input_error("link line before the solution line");
    }
    std::istringstream es(line);
    int a = 0, b = 0;
    if (!(es >> a >> b) || a < 1 || b < 1 || a > declared_bags ||
        b > declared_bags) {
      throw input_error("malformed link line in decomposition file");
    }
    td.links.push_back({a - 1, b - 1});
  }
  if (declared_bags < 0) {
    throw input_error("decomposition file has no solution line");
  }
  return td;
}

void write_pace_td(std::ostream& out, const TreeDecomposition& td,
                   int vertex_count) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' '
      << vertex_count << '\n';
  for (size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (const auto& [a, b] : td.links) {
    out << a + 1 << ' ' << b + 1 << '\n';
  }
}

int NiceTreeDecomposition::width() const {
  int best = -1;
  for (const auto& nd : nodes) {
    best = std::max(best, static_cast<int>(nd.bag.size()) - 1);
  }
  return best;
}

std::vector<int> NiceTreeDecomposition::topo_order() const {
  std::vector<int> order;
  order.reserve(nodes.size());
  std::deque<int> q{root};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    order.push_back(x);
    const NiceNode& nd = nodes[static_cast<size_t>(x)];
    if (nd.left >= 0) q.push_back(nd.left);
    if (nd.right >= 0) q.push_back(nd.right);
  }
  std::reverse(order.begin(), order.end());
  return order;
}

void NiceTreeDecomposition::validate(const WeightedGraph& g) const {
  const int nn = static_cast<int>(nodes.size());
  if (root < 0 || root >= nn) throw invariant_violation("bad nice root");
  if (!nodes[static_cast<size_t>(root)].bag.empty()) {
    throw invariant_violation("nice root bag is not empty");
  }
  std::vector<char> seen(static_cast<size_t>(nn), 0);
  std::vector<int> forget_count(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<int> edge_count(static_cast<size_t>(g.edge_count()), 0);
  std::deque<int> q{root};
  seen[static_cast<size_t>(root)] = 1;
  int reached = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    ++reached;
    const NiceNode& nd = nodes[static_cast<size_t>(x)];
    for (int c : {nd.left, nd.right}) {
      if (c < 0) continue;
      if (c >= nn || seen[static_cast<size_t>(c)]) {
        throw invariant_violation("nice nodes do not form a tree");
      }
      seen[static_cast<size_t>(c)] = 1;
      q.push_back(c);
    }
    const NiceNode* lc =
        nd.left >= 0 ? &nodes[static_cast<size_t>(nd.left)] : nullptr;
    switch (nd.kind) {
      case NiceKind::kLeaf:
        if (nd.left >= 0 || nd.right >= 0 || !nd.bag.empty()) {
          throw invariant_violation("leaf node carries a bag or children");
        }
        break;
      case NiceKind::kIntroduceVertex:
        if (!lc || nd.right >= 0 || nd.vertex < 0 ||
            nd.vertex >= g.vertex_count() || bag_has(lc->bag, nd.vertex) ||
            nd.bag != bag_plus(lc->bag, nd.vertex)) {
          throw invariant_violation("introduce node bag mismatch");
        }
        break;
      case NiceKind::kForget:
        if (!lc || nd.right >= 0 || nd.vertex < 0 ||
            nd.vertex >= g.vertex_count() || !bag_has(lc->bag, nd.vertex) ||
            nd.bag != bag_minus(lc->bag, nd.vertex)) {
          throw invariant_violation("forget node bag mismatch");
        }
        ++forget_count[static_cast<size_t>(nd.vertex)];
        break;
      case NiceKind::kIntroduceEdge: {
        if (!lc || nd.right >= 0 || nd.edge < 0 ||
            nd.edge >= g.edge_count() || nd.bag != lc->bag) {
          throw invariant_violation("edge node bag mismatch");
        }
        const Edge& e = g.edge(nd.edge);
        if (!bag_has(nd.bag, e.u) || !bag_has(nd.bag, e.v)) {
          throw invariant_violation("edge node bag misses an endpoint");
        }
        ++edge_count[static_cast<size_t>(nd.edge)];
        break;
      }
      case NiceKind::kJoin: {
        if (nd.left < 0 || nd.right < 0) {
          throw invariant_violation("join node lacks two children");
        }
        const NiceNode& rc = nodes[static_cast<size_t>(nd.right)];
        if (lc->bag != nd.bag || rc.bag != nd.bag) {
          throw invariant_violation("join children bags differ");
        }
        break;
      }
    }
  }
  if (reached != nn) throw invariant_violation("nice nodes do not form a tree");
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (forget_count[static_cast<size_t>(v)] != 1) {
      throw invariant_violation("vertex is not forgotten exactly once");
    }
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (edge_count[static_cast<size_t>(e)] != 1) {
      throw invariant_violation("edge is not introduced exactly once");
    }
  }
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td,
                                const WeightedGraph& g) {
  td.validate(g);
  NiceTreeDecomposition out;
  auto add = [&out](NiceNode nd) {
    out.nodes.push_back(std::move(nd));
    return static_cast<int>(out.nodes.size()) - 1;
  };

  const int nb = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> nbr(static_cast<size_t>(nb));
  for (const auto& [a, b] : td.links) {
    nbr[static_cast<size_t>(a)].push_back(b);
    nbr[static_cast<size_t>(b)].push_back(a);
  }
  for (auto& v : nbr) std::sort(v.begin(), v.end());
  std::vector<int> parent(static_cast<size_t>(nb), -1);
  std::vector<int> bfs{0};
  parent[0] = 0;
  for (size_t h = 0; h < bfs.size(); ++h) {
    int x = bfs[h];
    for (int y : nbr[static_cast<size_t>(x)]) {
      if (parent[static_cast<size_t>(y)] < 0) {
        parent[static_cast<size_t>(y)] = x;
        bfs.push_back(y);
      }
    }
  }
  parent[0] = -1;

  // Builds the introduce chain from an existing subtree top (bag `from`)
  // up to bag `to`: forgets first, then introduces, both ascending.
  auto morph = [&](int top, const std::vector<int>& from,
                   const std::vector<int>& to) {
    std::vector<int> cur = from;
    for (int v : from) {
      if (bag_has(to, v)) continue;
      cur = bag_minus(cur, v);
      top = add({NiceKind::kForget, cur, v, -1, top, -1});
    }
    for (int v : to) {
      if (bag_has(from, v)) continue;
      cur = bag_plus(cur, v);
      top = add({NiceKind::kIntroduceVertex, cur, v, -1, top, -1});
    }
    return top;
  };

  std::vector<int> top(static_cast<size_t>(nb), -1);
  for (size_t h = bfs.size(); h-- > 0;) {
    const int t = bfs[h];
    const std::vector<int>& bag = td.bags[static_cast<size_t>(t)];
    std::vector<int> kids;
    for (int y : nbr[static_cast<size_t>(t)]) {
      if (y != parent[static_cast<size_t>(t)]) kids.push_back(y);
    }
    int acc = -1;
    if (kids.empty()) {
      acc = add({NiceKind::kLeaf, {}, -1, -1, -1, -1});
      std::vector<int> cur;
      for (int v : bag) {
        cur = bag_plus(cur, v);
        acc = add({NiceKind::kIntroduceVertex, cur, v, -1, acc, -1});
      }
    } else {
      acc = morph(top[static_cast<size_t>(kids[0])],
                  td.bags[static_cast<size_t>(kids[0])], bag);
      for (size_t i = 1; i < kids.size(); ++i) {
        int rhs = morph(top[static_cast<size_t>(kids[i])],
                        td.bags[static_cast<size_t>(kids[i])], bag);
        acc = add({NiceKind::kJoin, bag, -1, -1, acc, rhs});
      }
    }
    top[static_cast<size_t>(t)] = acc;
  }
  int r = morph(top[0], td.bags[0], {});
  out.root = r;

  // Each edge goes immediately below the forget of its earlier-removed
  // endpoint, where the child bag still holds both ends.
  std::vector<int> depth(out.nodes.size(), 0);
  std::deque<int> q{out.root};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    const NiceNode& nd = out.nodes[static_cast<size_t>(x)];
    for (int c : {nd.left, nd.right}) {
      if (c < 0) continue;
      depth[static_cast<size_t>(c)] = depth[static_cast<size_t>(x)] + 1;
      q.push_back(c);
    }
  }
  std::vector<int> forget_of(static_cast<size_t>(g.vertex_count()), -1);
  for (size_t i = 0; i < out.nodes.size(); ++i) {
    const NiceNode& nd = out.nodes[i];
    if (nd.kind != NiceKind::kForget) continue;
    if (forget_of[static_cast<size_t>(nd.vertex)] >= 0) {
      throw invariant_violation("vertex forgotten twice in nice form");
    }
    forget_of[static_cast<size_t>(nd.vertex)] = static_cast<int>(i);
  }
  std::map<int, std::vector<int>> edges_at;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const int fu = forget_of[static_cast<size_t>(ed.u)];
    const int fv = forget_of[static_cast<size_t>(ed.v)];
    if (fu < 0 || fv < 0) {
      throw invariant_violation("edge endpoint never forgotten");
    }
    const int t = depth[static_cast<size_t>(fu)] > depth[static_cast<size_t>(fv)]
                      ? fu
                      : fv;
    edges_at[t].push_back(e);
  }
  for (auto& [t, ids] : edges_at) {
    std::sort(ids.rbegin(), ids.rend());
    NiceNode& fn = out.nodes[static_cast<size_t>(t)];
    const std::vector<int> below = out.nodes[static_cast<size_t>(fn.left)].bag;
    for (int e : ids) {
      const Edge& ed = g.edge(e);
      if (!bag_has(below, ed.u) || !bag_has(below, ed.v)) {
        throw invariant_violation("edge endpoints missing below the forget bag");
      }
      int nd = add({NiceKind::kIntroduceEdge, below, -1, e,
                    out.nodes[static_cast<size_t>(t)].left, -1});
      out.nodes[static_cast<size_t>(t)].left = nd;
    }
  }
  return out;
}

TreeDecomposition expand_td(const TreeDecomposition& td,
                            const WeightedGraph& base, int copies) {
  if (copies < 1) throw input_error("copies must be positive");
  TreeDecomposition out = td;
  const int n = base.vertex_count();
  for (int e = 0; e < base.edge_count(); ++e) {
    const Edge& ed = base.edge(e);
    const int lo = std::min(ed.u, ed.v);
    const int hi = std::max(ed.u, ed.v);
    int host = -1;
    for (size_t b = 0; b < td.bags.size(); ++b) {
      if (bag_has(td.bags[b], lo) && bag_has(td.bags[b], hi)) {
        host = static_cast<int>(b);
        break;
      }
    }
    if (host < 0) throw invariant_violation("edge endpoints share no bag");
    for (int c = 0; c < copies; ++c) {
      const int mid = n + e * copies + c;
      out.bags.push_back({lo, hi, mid});
      out.links.push_back({host, static_cast<int>(out.bags.size()) - 1});
    }
  }
  return out;
}

}  // namespace sforge
