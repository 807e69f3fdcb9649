#include <doctest.h>

#include <algorithm>

#include "sforge/errors.hpp"
#include "sforge/graph.hpp"
#include "sforge/ptp_spanner.hpp"
#include "sforge/rng.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/ss_spanner.hpp"
#include "test_support.hpp"

using namespace sforge;

namespace {

// Shortest path between two random vertices, read off the dijkstra tree.
std::vector<int> random_shortest_path(Rng& rng, const WeightedGraph& g) {
  int n = g.vertex_count();
  int a = rng.uniform_int(0, n - 1);
  auto t = dijkstra(g, a);
  int b = rng.uniform_int(0, n - 1);
  auto p = t.path_to(b);
  if (p.size() < 2) p = t.path_to((b + 1) % n);
  return p;
}

double dist_in(const WeightedGraph& g, const Subgraph& sub, int u, int v) {
  auto m = sub.materialize(g);
  auto t = dijkstra(m, u);
  return t.dist[static_cast<size_t>(v)];
}

}  // namespace

TEST_CASE("anchored path set obeys the quantitative bounds") {
  Rng rng(200);
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.uniform_int(8, 36);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(n / 2, 2 * n));
    auto base = random_shortest_path(rng, g);
    if (base.size() < 2) continue;
    int src = rng.uniform_int(0, n - 1);
    double eps = rng.uniform(0.1, 0.6);
    auto aps = ss_spanner(g, base, src, eps);

    REQUIRE(!aps.anchor_pos.empty());
    CHECK(std::is_sorted(aps.anchor_pos.begin(), aps.anchor_pos.end()));
    CHECK(aps.y0_slot >= 0);
    CHECK(aps.y0_slot < static_cast<int>(aps.anchor_pos.size()));
    if (aps.anchor_pos.size() > 1) ++nontrivial;

    double cap_w = 8.0 / (eps * eps) * aps.R;
    double cap_n = 8.0 / (eps * eps);
    double cap_s = 4.0 / eps * aps.R;
    CHECK(leq_tol(aps.side_weight(g, -1), cap_w));
    CHECK(leq_tol(aps.side_weight(g, +1), cap_w));
    CHECK(aps.left_count() + 1 <= cap_n + 1e-9);
    CHECK(aps.right_count() + 1 <= cap_n + 1e-9);
    CHECK(leq_tol(aps.side_span(-1), cap_s));
    CHECK(leq_tol(aps.side_span(+1), cap_s));

    // every anchor path is a real shortest path from the source
    auto t = dijkstra(g, src);
    REQUIRE(aps.paths.size() == aps.anchor_pos.size());
    for (size_t i = 0; i < aps.paths.size(); ++i) {
      int y = aps.base_path[static_cast<size_t>(
          aps.anchor_pos[static_cast<size_t>(i)])];
      double w = 0.0;
      for (int e : aps.paths[i]) w += g.edge(e).w;
      CHECK(w == doctest::Approx(t.dist[static_cast<size_t>(y)]).epsilon(1e-9));
    }

    // property: anchors plus the base path preserve the source-to-path
    // distances within 1+eps
    Subgraph avail = aps.all_edges();
    for (size_t i = 1; i < base.size(); ++i)
      avail.add(g.find_edge(base[i - 1], base[i]));
    for (int p : base) {
      double d_host = t.dist[static_cast<size_t>(p)];
      double d_sub = dist_in(g, avail, src, p);
      CHECK(leq_tol(d_sub, (1.0 + eps) * d_host));
    }
  }
  CHECK(nontrivial > 10);  // the scan must exercise real anchor sets
}

TEST_CASE("source on the base path yields the trivial anchor") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 3, 1.0);
  auto aps = ss_spanner(g, {0, 1, 2, 3}, 2, 0.25);
  CHECK(aps.R == doctest::Approx(0.0));
  CHECK(aps.anchor_pos.size() == 1);
  CHECK(aps.base_path[static_cast<size_t>(aps.anchor_pos[0])] == 2);
  CHECK(aps.all_edges().size() == 0);
}

TEST_CASE("ss_spanner validates the base path") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 3.0);
  g.add_edge(1, 2, 3.0);
  g.add_edge(0, 2, 1.0);  // shortcut: 0-1-2 is not shortest
  g.add_edge(2, 3, 1.0);
  CHECK_THROWS_AS(ss_spanner(g, {0, 1, 2}, 3, 0.3), contract_violation);
  CHECK_THROWS_AS(ss_spanner(g, {0, 3}, 1, 0.3), input_error);  // not a path
  CHECK_THROWS_AS(ss_spanner(g, {0, 2}, 1, 0.0), input_error);
  CHECK_THROWS_AS(ss_spanner(g, {}, 1, 0.3), input_error);
}

TEST_CASE("verify_shortest_path returns prefix sums") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 2.0);
  g.add_edge(1, 2, 3.0);
  auto pre = verify_shortest_path(g, {0, 1, 2});
  REQUIRE(pre.size() == 3);
  CHECK(pre[0] == doctest::Approx(0.0));
  CHECK(pre[2] == doctest::Approx(5.0));
}

TEST_CASE("walk to path spanner preserves walk-to-path distances") {
  Rng rng(201);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uniform_int(8, 30);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(n, 2 * n));
    auto base = random_shortest_path(rng, g);
    if (base.size() < 2) continue;
    // a random walk of a few hops
    std::vector<int> walk{rng.uniform_int(0, n - 1)};
    for (int step = 0; step < 6; ++step) {
      const auto& nb = g.neighbors(walk.back());
      walk.push_back(nb[static_cast<size_t>(rng.uniform_int(
                            0, static_cast<int>(nb.size()) - 1))]
                         .first);
    }
    double eps = rng.uniform(0.15, 0.5);
    auto out = walk_to_path_spanner(g, walk, base, eps);

    Subgraph avail = out;
    for (size_t i = 1; i < walk.size(); ++i)
      avail.add(g.find_edge(walk[i - 1], walk[i]));
    for (size_t i = 1; i < base.size(); ++i)
      avail.add(g.find_edge(base[i - 1], base[i]));
    auto m = avail.materialize(g);

    for (int x : walk) {
      double best_host = tsup::kBig;
      auto th = dijkstra(g, x);
      auto ts = dijkstra(m, x);
      double best_sub = tsup::kBig;
      for (int p : base) {
        best_host = std::min(best_host, th.dist[static_cast<size_t>(p)]);
        best_sub = std::min(best_sub, ts.dist[static_cast<size_t>(p)]);
      }
      CHECK(leq_tol(best_sub, (1.0 + 4.0 * eps) * best_host));
    }
  }
}

TEST_CASE("path-to-path spanner preserves demand pairs") {
  Rng rng(202);
  int demands_checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.uniform_int(10, 32);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(n, 3 * n));
    auto base = random_shortest_path(rng, g);
    if (base.size() < 2) continue;
    double eps = rng.uniform(0.15, 0.5);

    // demands: shortest paths that start on the base path
    std::vector<std::vector<int>> demands;
    double ell = 0.0;
    for (int d = 0; d < 4; ++d) {
      int a = base[static_cast<size_t>(
          rng.uniform_int(0, static_cast<int>(base.size()) - 1))];
      int b = rng.uniform_int(0, n - 1);
      if (a == b) continue;
      auto t = dijkstra(g, a);
      auto p = t.path_to(b);
      if (p.size() < 2) continue;
      ell = std::max(ell, t.dist[static_cast<size_t>(b)]);
      demands.push_back(p);
    }
    if (demands.empty()) continue;

    auto out = ptp_single(g, base, demands, ell, eps);
    for (const auto& dp : demands) {
      int u = dp.front(), v = dp.back();
      auto t = dijkstra(g, u);
      double d_sub = dist_in(g, out, u, v);
      CHECK(leq_tol(d_sub, (1.0 + eps) * t.dist[static_cast<size_t>(v)]));
      ++demands_checked;
    }
  }
  CHECK(demands_checked > 40);
}

TEST_CASE("multi-path spanner routes demands to their first base path") {
  WeightedGraph g(6);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(3, 4, 1.0);
  g.add_edge(4, 5, 1.0);
  g.add_edge(2, 3, 1.0);
  std::vector<std::vector<int>> bases{{0, 1, 2}, {3, 4, 5}};
  std::vector<std::vector<int>> demands{{1, 2, 3}, {4, 5}};
  auto out = ptp_spanner(g, bases, demands, 3.0, 0.3);
  for (const auto& dp : demands) {
    int u = dp.front(), v = dp.back();
    auto t = dijkstra(g, u);
    CHECK(leq_tol(dist_in(g, out, u, v),
                  (1.0 + 0.3) * t.dist[static_cast<size_t>(v)]));
  }
  // a demand touching no base path is rejected
  WeightedGraph h(4);
  h.add_edge(0, 1, 1.0);
  h.add_edge(2, 3, 1.0);
  h.add_edge(1, 2, 1.0);
  CHECK_THROWS_AS(
      ptp_spanner(h, {{0, 1}}, {{2, 3}}, 2.0, 0.3), input_error);
}
