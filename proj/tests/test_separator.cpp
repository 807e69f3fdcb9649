#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>

#include "sforge/ell_close.hpp"
#include "sforge/errors.hpp"
#include "sforge/graph.hpp"
#include "sforge/instances.hpp"
#include "sforge/rng.hpp"
#include "sforge/separator.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/verify.hpp"
#include "test_support.hpp"

using namespace sforge;

namespace {

// Independent component-size check after vertex removal.
int biggest_component_after(const WeightedGraph& g,
                            const std::vector<int>& removed) {
  std::vector<bool> gone(static_cast<size_t>(g.vertex_count()), false);
  for (int v : removed) gone[static_cast<size_t>(v)] = true;
  std::vector<bool> seen(static_cast<size_t>(g.vertex_count()), false);
  int best = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (gone[static_cast<size_t>(s)] || seen[static_cast<size_t>(s)]) continue;
    int count = 0;
    std::queue<int> q;
    q.push(s);
    seen[static_cast<size_t>(s)] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      ++count;
      for (auto [nb, e] : g.neighbors(v)) {
        (void)e;
        if (!gone[static_cast<size_t>(nb)] && !seen[static_cast<size_t>(nb)]) {
          seen[static_cast<size_t>(nb)] = true;
          q.push(nb);
        }
      }
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace

TEST_CASE("max_component_without matches a direct bfs count") {
  Rng rng(400);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform_int(4, 30);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, n));
    auto removed = rng.sample_indices(n, rng.uniform_int(0, n / 2));
    CHECK(max_component_without(g, removed) ==
          biggest_component_after(g, removed));
  }
}

TEST_CASE("tree centroid splits every tree in half") {
  Rng rng(401);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uniform_int(2, 60);
    auto tree = tsup::random_connected_graph(rng, n, 0);
    TreeCentroidProvider provider;
    auto fam = provider.separate(tree);
    REQUIRE(fam.levels.size() == 1);
    REQUIRE(fam.levels[0].size() == 1);
    REQUIRE(fam.levels[0][0].size() == 1);
    auto all = fam.all_vertices();
    CHECK(all.size() == 1);
    CHECK(fam.max_component == biggest_component_after(tree, all));
    CHECK(fam.max_component * 2 <= n);
    CHECK(fam.balance <= 0.5 + 1e-12);
  }
}

TEST_CASE("spt cycle separator family is well formed") {
  Rng rng(402);
  for (int trial = 0; trial < 15; ++trial) {
    int n = rng.uniform_int(4, 36);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(1, n));
    SptCycleProvider provider;
    auto fam = provider.separate(g);
    REQUIRE(!fam.levels.empty());
    auto all = fam.all_vertices();
    REQUIRE(!all.empty());
    CHECK(fam.max_component == biggest_component_after(g, all));
    CHECK(fam.balance ==
          doctest::Approx(static_cast<double>(fam.max_component) / n));

    // each level's paths are shortest paths of the graph minus the
    // vertices of earlier levels
    std::vector<int> gone;
    for (const auto& level : fam.levels) {
      std::vector<bool> removed(static_cast<size_t>(n), false);
      for (int v : gone) removed[static_cast<size_t>(v)] = true;
      std::vector<int> alive;
      for (int v = 0; v < n; ++v)
        if (!removed[static_cast<size_t>(v)]) alive.push_back(v);
      auto view = extract_induced(g, alive);
      for (const auto& path : level) {
        REQUIRE(!path.empty());
        for (int v : path) CHECK_FALSE(removed[static_cast<size_t>(v)]);
        int a = view.global_to_local[static_cast<size_t>(path.front())];
        auto t = dijkstra(view.graph, a);
        double w = 0.0;
        for (size_t i = 1; i < path.size(); ++i) {
          int e = g.find_edge(path[i - 1], path[i]);
          REQUIRE(e >= 0);
          w += g.edge(e).w;
        }
        int b = view.global_to_local[static_cast<size_t>(path.back())];
        CHECK(w == doctest::Approx(t.dist[static_cast<size_t>(b)]).epsilon(1e-9));
        for (int v : path) gone.push_back(v);
      }
    }
  }
}

TEST_CASE("terminal demand paths cover close pairs without inner terminals") {
  Rng rng(403);
  auto g = tsup::random_connected_graph(rng, 24, 30);
  auto terms = rng.sample_indices(24, 6);
  double ell = 6.0;
  auto demands = terminal_demand_paths(g, terms, ell);
  std::vector<bool> is_term(24, false);
  for (int t : terms) is_term[static_cast<size_t>(t)] = true;
  for (const auto& p : demands) {
    REQUIRE(p.size() >= 2);
    CHECK(is_term[static_cast<size_t>(p.front())]);
    CHECK(is_term[static_cast<size_t>(p.back())]);
    for (size_t i = 1; i + 1 < p.size(); ++i)
      CHECK_FALSE(is_term[static_cast<size_t>(p[i])]);
    double w = 0.0;
    for (size_t i = 1; i < p.size(); ++i)
      w += g.edge(g.find_edge(p[i - 1], p[i])).w;
    CHECK(leq_tol(w, ell));
    auto t = dijkstra(g, p.front());
    CHECK(w == doctest::Approx(t.dist[static_cast<size_t>(p.back())]));
  }
}

TEST_CASE("ell close spanner preserves tree demands exactly") {
  Rng rng(404);
  for (int trial = 0; trial < 12; ++trial) {
    int n = rng.uniform_int(8, 64);
    auto tree = tsup::random_connected_graph(rng, n, 0);
    auto terms = rng.sample_indices(n, rng.uniform_int(2, 8));
    double ell = 1e9;  // everything is in range on a tree
    auto demands = terminal_demand_paths(tree, terms, ell);
    if (demands.empty()) continue;
    TreeCentroidProvider provider;
    EllCloseDiagnostics diag;
    auto out = ell_close_spanner(tree, terms, demands, ell, 0.25, provider,
                                 &diag);
    auto m = out.materialize(tree);
    for (const auto& p : demands) {
      auto th = dijkstra(tree, p.front());
      auto ts = dijkstra(m, p.front());
      CHECK(ts.dist[static_cast<size_t>(p.back())] ==
            doctest::Approx(th.dist[static_cast<size_t>(p.back())]));
    }
    int cap = static_cast<int>(std::ceil(std::log2(std::max(2, n)))) + 1;
    CHECK(diag.max_depth <= cap);
  }
}

TEST_CASE("ell close spanner window contract on grids") {
  InstanceSpec spec;
  spec.family = "grid";
  spec.size = 36;
  spec.terminals = 8;
  spec.seed = 5;
  auto inst = generate_graph(spec);
  const auto& g = inst.graph;
  double eps = 0.3;
  double ell = 4.0;
  auto demands = terminal_demand_paths(g, inst.terminals, ell);
  SptCycleProvider provider;
  EllCloseDiagnostics diag;
  auto out = ell_close_spanner(g, inst.terminals, demands, ell, eps, provider,
                               &diag);
  CHECK(diag.output_weight == doctest::Approx(out.weight(g)));
  auto m = out.materialize(g);
  for (const auto& p : demands) {
    auto th = dijkstra(g, p.front());
    auto ts = dijkstra(m, p.front());
    double d = th.dist[static_cast<size_t>(p.back())];
    CHECK(leq_tol(ts.dist[static_cast<size_t>(p.back())], (1.0 + eps) * d));
  }
}

TEST_CASE("separator oracle answers definition-1 queries") {
  Rng rng(405);
  for (int trial = 0; trial < 8; ++trial) {
    int n = rng.uniform_int(9, 25);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(2, n));
    SeparatorOracle oracle(g, std::make_shared<SptCycleProvider>());
    CHECK(oracle.name() == "separator-spt-cycle");
    OracleQuery q;
    q.terminals = rng.sample_indices(n, rng.uniform_int(3, 6));
    q.ell = rng.uniform(1.5, 8.0);
    q.epsilon = rng.uniform(0.15, 0.5);
    auto sub = oracle.query(q);
    for (int e : sub.edge_ids) CHECK(leq_tol(g.edge(e).w, 2.0 * q.ell));
    auto rep =
        measure_stretch_window(g, sub, q.terminals, q.ell / 8.0, q.ell);
    CHECK(rep.unreachable_pairs == 0);
    CHECK(leq_tol(rep.max_stretch, 1.0 + q.epsilon));
  }
}
