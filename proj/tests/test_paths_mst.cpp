#include <doctest.h>

#include <cmath>

#include "sforge/errors.hpp"
#include "sforge/metric.hpp"
#include "sforge/mst.hpp"
#include "sforge/rng.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/steiner.hpp"
#include "sforge/verify.hpp"
#include "test_support.hpp"

using namespace sforge;

TEST_CASE("dijkstra agrees with bellman-ford on random graphs") {
  Rng rng(100);
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.uniform_int(2, 40);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, 2 * n));
    int src = rng.uniform_int(0, n - 1);
    auto t = dijkstra(g, src);
    auto ref = tsup::bellman_ford(g, src);
    for (int v = 0; v < n; ++v) {
      CHECK(t.reached(v));
      CHECK(t.dist[static_cast<size_t>(v)] ==
            doctest::Approx(ref[static_cast<size_t>(v)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("dijkstra path reconstruction is consistent") {
  Rng rng(101);
  auto g = tsup::random_connected_graph(rng, 25, 30);
  auto t = dijkstra(g, 3);
  for (int v = 0; v < 25; ++v) {
    auto vs = t.path_to(v);
    auto es = t.path_edges_to(v);
    REQUIRE(vs.size() == es.size() + 1);
    CHECK(vs.front() == 3);
    CHECK(vs.back() == v);
    double w = 0.0;
    for (size_t i = 0; i < es.size(); ++i) {
      const auto& e = g.edge(es[i]);
      CHECK(((e.u == vs[i] && e.v == vs[i + 1]) ||
             (e.v == vs[i] && e.u == vs[i + 1])));
      w += e.w;
    }
    CHECK(w == doctest::Approx(t.dist[static_cast<size_t>(v)]));
    CHECK(path_weight(g, es) == doctest::Approx(w));
    if (!vs.empty()) CHECK(path_edges_of(g, vs) == es);
  }
}

TEST_CASE("dijkstra leaves other components unreached") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  auto t = dijkstra(g, 0);
  CHECK(t.reached(1));
  CHECK_FALSE(t.reached(2));
  CHECK(t.dist[2] >= kInf);
}

TEST_CASE("mst matches tree enumeration on small graphs") {
  Rng rng(102);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uniform_int(2, 7);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, n));
    auto f = minimum_spanning_forest(g);
    CHECK(f.size() == n - 1);
    CHECK(f.weight(g) ==
          doctest::Approx(tsup::mst_weight_by_enumeration(g)).epsilon(1e-12));
  }
}

TEST_CASE("mst on a forest keeps every component spanning") {
  WeightedGraph g(6);
  g.add_edge(0, 1, 5.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 2.0);
  g.add_edge(3, 4, 1.0);
  auto f = minimum_spanning_forest(g);
  CHECK(f.size() == 3);
  CHECK(f.weight(g) == doctest::Approx(4.0));
}

TEST_CASE("disjoint sets union and count") {
  DisjointSets ds(5);
  CHECK(ds.set_count() == 5);
  CHECK(ds.unite(0, 1));
  CHECK_FALSE(ds.unite(1, 0));
  CHECK(ds.unite(2, 3));
  CHECK(ds.set_count() == 3);
  CHECK(ds.find(0) == ds.find(1));
  CHECK(ds.find(0) != ds.find(4));
}

TEST_CASE("metric completion matches pairwise bellman-ford") {
  Rng rng(103);
  for (int trial = 0; trial < 15; ++trial) {
    int n = rng.uniform_int(4, 30);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, n));
    auto terms = tsup::random_terminals(rng, n, rng.uniform_int(2, 6));
    auto mc = metric_completion(g, terms);
    REQUIRE(mc.size() == static_cast<int>(terms.size()));
    for (int i = 0; i < mc.size(); ++i) {
      auto ref = tsup::bellman_ford(g, terms[static_cast<size_t>(i)]);
      for (int j = 0; j < mc.size(); ++j)
        CHECK(mc.dist(i, j) ==
              doctest::Approx(ref[static_cast<size_t>(
                                  terms[static_cast<size_t>(j)])])
                  .epsilon(1e-12));
    }
    CHECK(check_metric_axioms(mc.matrix()));
    // witnesses realize the distances
    for (int i = 0; i < mc.size(); ++i)
      for (int j = 0; j < mc.size(); ++j) {
        if (i == j) continue;
        auto vs = mc.kappa_vertices(i, j);
        auto es = mc.kappa_edges(i, j);
        CHECK(vs.front() == mc.terminal(i));
        CHECK(vs.back() == mc.terminal(j));
        REQUIRE(vs.size() == es.size() + 1);
        double w = 0.0;
        for (int e : es) w += g.edge(e).w;
        CHECK(w == doctest::Approx(mc.dist(i, j)));
      }
  }
}

TEST_CASE("metric completion rejects disconnected terminals") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  CHECK_THROWS_AS(metric_completion(g, {0, 2}), input_error);
}

TEST_CASE("metric axiom checker flags violations") {
  CHECK(check_metric_axioms({{0.0, 1.0}, {1.0, 0.0}}));
  CHECK_FALSE(check_metric_axioms({{0.0, 1.0}, {2.0, 0.0}}));
  CHECK_FALSE(
      check_metric_axioms({{0.0, 1.0, 5.0}, {1.0, 0.0, 1.0}, {5.0, 1.0, 0.0}}));
}

TEST_CASE("steiner 2-approximation against exhaustive optimum") {
  Rng rng(104);
  for (int trial = 0; trial < 12; ++trial) {
    int n = rng.uniform_int(4, 9);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, n / 2));
    auto terms = tsup::random_terminals(rng, n, rng.uniform_int(2, 4));
    auto tree = steiner_2approx(g, terms);
    auto m = tree.materialize(g);
    // tree containing every terminal
    std::vector<int> nonempty;
    for (int v = 0; v < n; ++v)
      if (!m.neighbors(v).empty()) nonempty.push_back(v);
    auto view = extract_induced(m, nonempty);
    CHECK(view.graph.is_tree());
    auto ids = m.component_ids();
    for (size_t i = 1; i < terms.size(); ++i)
      CHECK(ids[static_cast<size_t>(terms[i])] ==
            ids[static_cast<size_t>(terms[0])]);
    double opt = tsup::steiner_weight_by_enumeration(g, terms);
    CHECK(tree.weight(g) >= opt - 1e-9);
    CHECK(tree.weight(g) <= 2.0 * opt + 1e-9);
    // cross-check the exact reference implementation too
    CHECK(steiner_exact_weight(g, terms) == doctest::Approx(opt).epsilon(1e-9));
  }
}

TEST_CASE("steiner exact refuses oversized terminal sets") {
  Rng rng(105);
  auto g = tsup::random_connected_graph(rng, 20, 10);
  std::vector<int> terms(14);
  for (int i = 0; i < 14; ++i) terms[static_cast<size_t>(i)] = i;
  CHECK_THROWS_AS(steiner_exact_weight(g, terms, 12), input_error);
}

TEST_CASE("stretch measurement identities") {
  Rng rng(106);
  auto g = tsup::random_connected_graph(rng, 20, 15);
  Subgraph all;
  for (int e = 0; e < g.edge_count(); ++e) all.add(e);
  auto rep = measure_stretch(g, all, {0, 5, 9, 13});
  CHECK(rep.max_stretch == doctest::Approx(1.0));
  CHECK(rep.pairs_checked == 6);
  CHECK(rep.unreachable_pairs == 0);
  CHECK(rep.all_within(1.0, 1e-9));

  // dropping an edge of a path graph disconnects the far pair
  WeightedGraph path(3);
  path.add_edge(0, 1, 1.0);
  path.add_edge(1, 2, 1.0);
  Subgraph first;
  first.add(0);
  auto rep2 = measure_stretch(path, first, {0, 2});
  CHECK(rep2.unreachable_pairs == 1);
  CHECK_FALSE(rep2.all_within(10.0, 1e-9));
}

TEST_CASE("windowed stretch ignores out-of-window pairs") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 10.0);
  g.add_edge(0, 2, 10.5);
  Subgraph sub;
  sub.add(0);  // only the cheap edge
  auto rep = measure_stretch_window(g, sub, {0, 1, 2}, 0.5, 2.0);
  CHECK(rep.pairs_checked == 1);  // only (0,1) is in window
  CHECK(rep.max_stretch == doctest::Approx(1.0));
}

TEST_CASE("closed walk cover predicate") {
  WeightedGraph g(4);
  int a = g.add_edge(0, 1, 1.0);
  int b = g.add_edge(1, 2, 1.0);
  int c = g.add_edge(2, 0, 1.0);
  int d = g.add_edge(2, 3, 1.0);
  CHECK(is_closed_walk_cover(g, {a, b, c}, {0, 1, 2}));
  CHECK_FALSE(is_closed_walk_cover(g, {a, b, c}, {0, 1, 2, 3}));  // misses 3
  CHECK_FALSE(is_closed_walk_cover(g, {a, b, d}, {0, 1, 2}));     // odd degrees
  CHECK(is_closed_walk_cover(g, {a, b, c, d, d}, {0, 1, 2, 3}));
  CHECK(is_closed_walk_cover(g, {}, {2}));
  CHECK_FALSE(is_closed_walk_cover(g, {}, {0, 1}));
}

TEST_CASE("lightness is spanner weight over baseline weight") {
  WeightedGraph g(3);
  int a = g.add_edge(0, 1, 2.0);
  int b = g.add_edge(1, 2, 3.0);
  int c = g.add_edge(0, 2, 4.0);
  Subgraph base;
  base.add(a);
  base.add(b);
  Subgraph span;
  span.add(a);
  span.add(b);
  span.add(c);
  CHECK(measure_lightness(g, span, base) == doctest::Approx(9.0 / 5.0));
}
