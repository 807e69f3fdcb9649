#include <doctest.h>

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "sforge/errors.hpp"
#include "sforge/graph.hpp"
#include "sforge/partitions.hpp"
#include "sforge/rng.hpp"
#include "sforge/tree_decomposition.hpp"
#include "test_support.hpp"

using namespace sforge;

namespace {

WeightedGraph cycle_graph(int n) {
  WeightedGraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n, 1.0);
  return g;
}

WeightedGraph complete_unit(int n) {
  WeightedGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b, 1.0);
  return g;
}

}  // namespace

TEST_CASE("min_fill_decomposition is valid and exact on easy families") {
  WeightedGraph path(5);
  for (int v = 0; v + 1 < 5; ++v) path.add_edge(v, v + 1, 1.0);
  auto td_path = min_fill_decomposition(path);
  td_path.validate(path);
  CHECK(td_path.width() == 1);

  auto cyc = cycle_graph(7);
  auto td_cyc = min_fill_decomposition(cyc);
  td_cyc.validate(cyc);
  CHECK(td_cyc.width() == 2);

  auto k6 = complete_unit(6);
  auto td_k6 = min_fill_decomposition(k6);
  td_k6.validate(k6);
  CHECK(td_k6.width() == 5);

  WeightedGraph lonely(3);
  lonely.add_edge(0, 1, 1.0);
  auto td_l = min_fill_decomposition(lonely);
  td_l.validate(lonely);
  CHECK(td_l.width() <= 1);
}

TEST_CASE("min_fill_decomposition validates on random graphs") {
  Rng rng(600);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform_int(2, 30);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, 2 * n));
    auto td = min_fill_decomposition(g);
    td.validate(g);
    CHECK(td.width() >= (g.edge_count() > 0 ? 1 : 0));
    CHECK(td.width() < n);
  }
}

TEST_CASE("validate rejects broken decompositions") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);

  TreeDecomposition missing_vertex;
  missing_vertex.bags = {{0, 1}};
  CHECK_THROWS_AS(missing_vertex.validate(g), invariant_violation);

  TreeDecomposition missing_edge;
  missing_edge.bags = {{0, 1}, {2}};
  missing_edge.links = {{0, 1}};
  CHECK_THROWS_AS(missing_edge.validate(g), invariant_violation);

  TreeDecomposition torn;  // vertex 0 appears in two disconnected bags
  torn.bags = {{0, 1}, {1, 2}, {0, 2}};
  torn.links = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(torn.validate(g), invariant_violation);

  TreeDecomposition cycle_links;
  cycle_links.bags = {{0, 1}, {1, 2}, {1}};
  cycle_links.links = {{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(cycle_links.validate(g), invariant_violation);

  TreeDecomposition unsorted;
  unsorted.bags = {{1, 0}, {1, 2}};
  unsorted.links = {{0, 1}};
  CHECK_THROWS_AS(unsorted.validate(g), invariant_violation);
}

TEST_CASE("pace io round trips a decomposition") {
  Rng rng(601);
  auto g = tsup::random_connected_graph(rng, 12, 10);
  auto td = min_fill_decomposition(g);
  td.validate(g);

  std::stringstream buf;
  write_pace_td(buf, td, g.vertex_count());
  auto back = read_pace_td(buf);
  back.validate(g);
  CHECK(back.bags == td.bags);
  auto norm = [](std::vector<std::pair<int, int>> ls) {
    for (auto& [a, b] : ls)
      if (a > b) std::swap(a, b);
    std::sort(ls.begin(), ls.end());
    return ls;
  };
  CHECK(norm(back.links) == norm(td.links));

  std::stringstream junk("c comment\ns td 1 1 2\nb 1 1\nb 1 2\n");
  CHECK_THROWS_AS(read_pace_td(junk), input_error);
  std::stringstream empty("c nothing\n");
  CHECK_THROWS_AS(read_pace_td(empty), input_error);
}

TEST_CASE("make_nice produces a valid typed decomposition") {
  Rng rng(602);
  for (int trial = 0; trial < 12; ++trial) {
    int n = rng.uniform_int(2, 18);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, n));
    auto td = min_fill_decomposition(g);
    auto nice = make_nice(td, g);
    nice.validate(g);
    CHECK(nice.width() <= td.width());
    CHECK(nice.nodes[static_cast<size_t>(nice.root)].bag.empty());

    auto order = nice.topo_order();
    CHECK(order.size() == nice.nodes.size());
    CHECK(order.back() == nice.root);
    std::vector<int> pos(nice.nodes.size(), -1);
    for (size_t i = 0; i < order.size(); ++i)
      pos[static_cast<size_t>(order[i])] = static_cast<int>(i);
    int edge_intros = 0;
    for (size_t v = 0; v < nice.nodes.size(); ++v) {
      const auto& nd = nice.nodes[v];
      if (nd.left >= 0)
        CHECK(pos[static_cast<size_t>(nd.left)] < pos[v]);
      if (nd.right >= 0)
        CHECK(pos[static_cast<size_t>(nd.right)] < pos[v]);
      if (nd.kind == NiceKind::kLeaf) CHECK(nd.bag.empty());
      if (nd.kind == NiceKind::kIntroduceEdge) ++edge_intros;
      if (nd.kind == NiceKind::kJoin) {
        CHECK(nd.right >= 0);
        CHECK(nice.nodes[static_cast<size_t>(nd.left)].bag == nd.bag);
        CHECK(nice.nodes[static_cast<size_t>(nd.right)].bag == nd.bag);
      }
    }
    CHECK(edge_intros == g.edge_count());
  }
}

TEST_CASE("expand_td covers the subdivided parallel copies") {
  Rng rng(603);
  for (int copies : {2, 3}) {
    auto base = tsup::random_connected_graph(rng, 8, 5);
    auto td = min_fill_decomposition(base);
    td.validate(base);

    const int n = base.vertex_count();
    WeightedGraph m(n + base.edge_count() * copies);
    for (int e = 0; e < base.edge_count(); ++e) {
      const auto& ed = base.edge(e);
      for (int c = 0; c < copies; ++c) {
        int mid = n + e * copies + c;
        m.add_edge(ed.u, mid, ed.w / 2.0);
        m.add_edge(mid, ed.v, ed.w / 2.0);
      }
    }
    auto big = expand_td(td, base, copies);
    big.validate(m);
    CHECK(big.width() == std::max(td.width(), 2));
  }
}

TEST_CASE("partition primitives keep restricted growth form") {
  CHECK(canonical_partition({5, 5, 2}) == Partition{0, 0, 1});
  CHECK(canonical_partition({3, 1, 3, 7}) == Partition{0, 1, 0, 2});
  CHECK(block_count(Partition{0, 1, 0, 2}) == 3);
  CHECK(same_block(Partition{0, 1, 0}, 0, 2));
  CHECK(!same_block(Partition{0, 1, 0}, 0, 1));

  Partition p{0, 1, 0, 2};
  CHECK(partition_union(p, 1, 3) == Partition{0, 1, 0, 1});
  CHECK(partition_union(p, 0, 2) == p);
  CHECK(partition_insert(p, 2) == Partition{0, 1, 2, 0, 3});
  CHECK(partition_insert(p, 4) == Partition{0, 1, 0, 2, 3});
  CHECK(partition_remove(Partition{0, 1, 2, 0, 3}, 2) == p);
  for (int pos = 0; pos <= static_cast<int>(p.size()); ++pos)
    CHECK(partition_remove(partition_insert(p, pos), pos) == p);
}

TEST_CASE("partition_join matches a union-find recomputation") {
  for (int q = 1; q <= 4; ++q) {
    auto parts = all_partitions(q);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        auto joined = partition_join(a, b);
        // reference: union both block relations pairwise
        std::vector<int> label(static_cast<size_t>(q));
        for (int i = 0; i < q; ++i) label[static_cast<size_t>(i)] = i;
        auto unite = [&](int x, int y) {
          int lx = label[static_cast<size_t>(x)];
          int ly = label[static_cast<size_t>(y)];
          if (lx == ly) return;
          for (int& l : label)
            if (l == ly) l = lx;
        };
        for (int i = 0; i < q; ++i)
          for (int j = i + 1; j < q; ++j) {
            if (same_block(a, i, j)) unite(i, j);
            if (same_block(b, i, j)) unite(i, j);
          }
        CHECK(joined == canonical_partition(label));
      }
    }
  }
  CHECK_THROWS_AS(partition_join(Partition{0}, Partition{0, 1}), input_error);
}

TEST_CASE("all_partitions counts match the bell numbers") {
  const int bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (int q = 0; q <= 6; ++q) {
    auto parts = all_partitions(q);
    CHECK(parts.size() == static_cast<size_t>(bell[q]));
    for (const auto& p : parts) {
      CHECK(p == canonical_partition(p));
      CHECK(p.size() == static_cast<size_t>(q));
    }
    // no duplicates: lexicographic enumeration is strictly increasing
    for (size_t i = 1; i < parts.size(); ++i) CHECK(parts[i - 1] < parts[i]);
  }
}

TEST_CASE("reduce_representatives preserves best completions") {
  Rng rng(604);
  for (int q = 1; q <= 5; ++q) {
    auto universe = all_partitions(q);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Partition> cand;
      std::vector<double> weights;
      int m = rng.uniform_int(1, 2 * static_cast<int>(universe.size()));
      for (int i = 0; i < m; ++i) {
        cand.push_back(
            universe[static_cast<size_t>(rng.uniform_int(
                0, static_cast<int>(universe.size()) - 1))]);
        weights.push_back(rng.uniform(0.0, 5.0));
      }
      auto kept = reduce_representatives(cand, weights, q);
      CHECK(kept.size() <= (size_t{1} << (q - 1)));
      for (size_t i = 1; i < kept.size(); ++i) CHECK(kept[i - 1] < kept[i]);

      const double inf = std::numeric_limits<double>::infinity();
      for (const auto& b : universe) {
        double best_all = inf;
        for (size_t i = 0; i < cand.size(); ++i)
          if (block_count(partition_join(cand[i], b)) == 1)
            best_all = std::min(best_all, weights[i]);
        double best_kept = inf;
        for (int i : kept)
          if (block_count(partition_join(cand[static_cast<size_t>(i)], b)) ==
              1)
            best_kept = std::min(best_kept, weights[static_cast<size_t>(i)]);
        if (best_all == inf) {
          CHECK(best_kept == inf);
        } else {
          CHECK(best_kept == doctest::Approx(best_all));
        }
      }

      auto everything = reduce_representatives(cand, weights, q, true);
      CHECK(everything.size() == cand.size());
      for (size_t i = 0; i < everything.size(); ++i)
        CHECK(everything[i] == static_cast<int>(i));
    }
  }
  CHECK_THROWS_AS(
      reduce_representatives({Partition{0}}, {1.0, 2.0}, 1), input_error);
}
