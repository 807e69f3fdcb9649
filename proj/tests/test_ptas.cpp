#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "sforge/ell_close.hpp"
#include "sforge/errors.hpp"
#include "sforge/graph.hpp"
#include "sforge/instances.hpp"
#include "sforge/ptas.hpp"
#include "sforge/rng.hpp"
#include "sforge/separator.hpp"
#include "sforge/steiner.hpp"
#include "sforge/subset_tsp.hpp"
#include "sforge/verify.hpp"
#include "test_support.hpp"

using namespace sforge;

namespace {

SeparatorOracle spt_oracle(const WeightedGraph& g) {
  return SeparatorOracle(g, std::make_shared<SptCycleProvider>());
}

std::vector<int> expand_multiset(const std::vector<TourEdge>& edges) {
  std::vector<int> ids;
  for (const auto& te : edges)
    for (int c = 0; c < te.mult; ++c) ids.push_back(te.edge);
  return ids;
}

}  // namespace

TEST_CASE("partition_spanner_edges is a disjoint argmin cover") {
  Rng rng(800);
  for (auto scheme :
       {PartitionScheme::kBfsLayers, PartitionScheme::kGreedyBalance}) {
    for (int trial = 0; trial < 8; ++trial) {
      int n = rng.uniform_int(8, 30);
      auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(2, n));
      Subgraph span;
      for (int e = 0; e < g.edge_count(); ++e)
        if (e % 3 != 1) span.add(e);
      int groups = rng.uniform_int(1, 5);
      auto part = partition_spanner_edges(g, span, groups, scheme, 0);
      CHECK(part.groups == groups);
      CHECK(part.parts.size() == static_cast<size_t>(groups));

      std::set<int> seen;
      double best = -1.0;
      int arg = -1;
      for (int p = 0; p < groups; ++p) {
        double w = 0.0;
        for (int e : part.parts[static_cast<size_t>(p)]) {
          CHECK(seen.insert(e).second);
          w += g.edge(e).w;
        }
        if (arg < 0 || w < best) {
          best = w;
          arg = p;
        }
      }
      CHECK(seen.size() == span.edge_ids.size());
      for (int e : span.edge_ids) CHECK(seen.count(e) == 1);
      CHECK(part.chosen == arg);
      CHECK(part.chosen_weight == doctest::Approx(best));
      CHECK(part.measured_width >= 0);
    }
  }
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  Subgraph s;
  s.add(0);
  CHECK_THROWS_AS(partition_spanner_edges(g, s, 0, PartitionScheme::kBfsLayers, 0),
                  input_error);
  CHECK_THROWS_AS(partition_spanner_edges(g, s, 2, PartitionScheme::kBfsLayers, 3),
                  input_error);
  CHECK_THROWS_AS(
      partition_spanner_edges(g, s, 2, PartitionScheme::kBfsLayers, -1),
      input_error);
}

TEST_CASE("run_ptas lifts a feasible closed walk on grids") {
  for (auto scheme :
       {PartitionScheme::kBfsLayers, PartitionScheme::kGreedyBalance}) {
    for (uint64_t seed : {11u, 12u}) {
      InstanceSpec spec;
      spec.family = "grid";
      spec.size = 16;
      spec.terminals = 5;
      spec.seed = seed;
      auto inst = generate_graph(spec);
      auto oracle = spt_oracle(inst.graph);
      auto res = run_ptas(inst.graph, inst.terminals, 0.3, oracle, scheme);

      CHECK(is_closed_walk_cover(inst.graph, expand_multiset(res.edges),
                                 inst.terminals));
      double total = 0.0;
      for (const auto& te : res.edges) total += te.w * te.mult;
      CHECK(total == doctest::Approx(res.tour_weight));
      CHECK(res.report.tour_weight == doctest::Approx(res.tour_weight));

      double hk = held_karp_tour(inst.graph, inst.terminals);
      CHECK(res.report.lower_bound_exact);
      CHECK(res.report.lower_bound == doctest::Approx(hk));
      CHECK(res.tour_weight >= hk - 1e-9);
      CHECK(res.report.ratio >= 1.0 - 1e-9);
      CHECK(res.report.g >= 1);
      CHECK(res.report.measured_width >= 0);
      CHECK(res.report.spanner_lightness > 0.0);
    }
  }
}

TEST_CASE("run_ptas on a tree charges every branch twice") {
  InstanceSpec spec;
  spec.family = "tree";
  spec.size = 14;
  spec.terminals = 5;
  spec.seed = 3;
  auto inst = generate_graph(spec);
  auto oracle = spt_oracle(inst.graph);
  auto res = run_ptas(inst.graph, inst.terminals, 0.2, oracle);
  double steiner = steiner_exact_weight(inst.graph, inst.terminals);
  CHECK(res.tour_weight >= 2.0 * steiner - 1e-9);
  CHECK(is_closed_walk_cover(inst.graph, expand_multiset(res.edges),
                             inst.terminals));
}

TEST_CASE("run_ptas handles trivial and bad input") {
  Rng rng(801);
  auto g = tsup::random_connected_graph(rng, 8, 4);
  auto oracle = spt_oracle(g);
  auto solo = run_ptas(g, {5}, 0.3, oracle);
  CHECK(solo.tour_weight == 0.0);
  CHECK(solo.edges.empty());
  CHECK(solo.report.ratio == 1.0);
  CHECK(solo.report.lower_bound_exact);

  CHECK_THROWS_AS(run_ptas(g, {0, 1}, 0.0, oracle), input_error);
  CHECK_THROWS_AS(run_ptas(g, {0, 1}, 1.0, oracle), input_error);

  WeightedGraph split(4);
  split.add_edge(0, 1, 1.0);
  split.add_edge(2, 3, 1.0);
  auto so = spt_oracle(split);
  CHECK_THROWS_AS(run_ptas(split, {0, 2}, 0.3, so), input_error);
}

TEST_CASE("ptas report json carries the pipeline readings") {
  InstanceSpec spec;
  spec.family = "grid";
  spec.size = 9;
  spec.terminals = 4;
  spec.seed = 21;
  auto inst = generate_graph(spec);
  auto oracle = spt_oracle(inst.graph);
  auto res = run_ptas(inst.graph, inst.terminals, 0.4, oracle);
  auto j = nlohmann::json::parse(res.report.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["epsilon"].get<double>() == doctest::Approx(0.4));
  CHECK(j["tour_weight"].get<double>() ==
        doctest::Approx(res.tour_weight));
  CHECK(j["ratio"].get<double>() >= 1.0 - 1e-9);
  CHECK(j.contains("w_X"));
  CHECK(j.contains("odd_vertices"));
  CHECK(j.contains("terminal_moves"));
}

TEST_CASE("instance generator families have the advertised shapes") {
  InstanceSpec spec;
  spec.family = "grid";
  spec.size = 9;
  spec.terminals = 4;
  spec.seed = 5;
  auto grid = generate_graph(spec);
  CHECK(grid.graph.vertex_count() == 9);
  CHECK(grid.graph.edge_count() == 12);
  CHECK(grid.graph.is_connected());

  spec.size = 11;  // rounds down to the 3x3 grid
  CHECK(generate_graph(spec).graph.vertex_count() == 9);

  spec.family = "tree";
  spec.size = 10;
  auto tree = generate_graph(spec);
  CHECK(tree.graph.vertex_count() == 10);
  CHECK(tree.graph.edge_count() == 9);
  CHECK(tree.graph.is_tree());

  spec.family = "random-geometric";
  spec.size = 40;
  auto geo = generate_graph(spec);
  CHECK(geo.graph.vertex_count() == 40);
  CHECK(geo.graph.is_connected());

  spec.family = "path-plus-clique";
  spec.size = 16;
  auto pc = generate_graph(spec);
  CHECK(pc.graph.vertex_count() == 16);
  CHECK(pc.graph.is_connected());
  // clique on the first 4 vertices, unit path onwards
  CHECK(pc.graph.edge_count() == 6 + 12);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) CHECK(pc.graph.find_edge(a, b) >= 0);

  spec.family = "euclidean-points";
  spec.size = 25;
  auto pts = generate_instance(spec);
  CHECK(pts.is_points);
  CHECK(pts.points.size() == 25);
  CHECK(pts.points.dimension() == 2);

  spec.family = "doubling-grid";
  spec.size = 25;
  auto dbl = generate_instance(spec);
  CHECK(dbl.is_points);
  CHECK(dbl.points.size() == 25);

  spec.family = "moebius";
  CHECK_THROWS_AS(generate_instance(spec), input_error);
  spec.family = "grid";
  spec.size = 0;
  CHECK_THROWS_AS(generate_instance(spec), input_error);
  spec.size = 9;
  spec.terminals = -1;
  CHECK_THROWS_AS(generate_instance(spec), input_error);
}

TEST_CASE("instance generation is deterministic per seed") {
  for (const auto& family : instance_families()) {
    InstanceSpec spec;
    spec.family = family;
    spec.size = 20;
    spec.terminals = 6;
    spec.seed = 99;
    auto a = generate_instance(spec);
    auto b = generate_instance(spec);
    CHECK(a.is_points == b.is_points);
    CHECK(a.terminals == b.terminals);
    CHECK(std::is_sorted(a.terminals.begin(), a.terminals.end()));
    if (a.is_points) {
      CHECK(a.points.coords == b.points.coords);
    } else {
      REQUIRE(a.graph.graph.edge_count() == b.graph.graph.edge_count());
      for (int e = 0; e < a.graph.graph.edge_count(); ++e) {
        const auto& ea = a.graph.graph.edge(e);
        const auto& eb = b.graph.graph.edge(e);
        CHECK(ea.u == eb.u);
        CHECK(ea.v == eb.v);
        CHECK(ea.w == eb.w);
      }
    }
    spec.seed = 100;
    auto c = generate_instance(spec);
    bool differs = a.terminals != c.terminals;
    if (!a.is_points) {
      for (int e = 0; !differs && e < std::min(a.graph.graph.edge_count(),
                                               c.graph.graph.edge_count());
           ++e)
        differs = a.graph.graph.edge(e).w != c.graph.graph.edge(e).w;
    } else {
      differs = differs || a.points.coords != c.points.coords;
    }
    CHECK(differs);
  }
}

TEST_CASE("terminal samples clamp to the instance size") {
  InstanceSpec spec;
  spec.family = "tree";
  spec.size = 5;
  spec.terminals = 50;
  spec.seed = 1;
  auto inst = generate_instance(spec);
  CHECK(inst.terminals.size() == 5);
  for (int t : inst.terminals) {
    CHECK(t >= 0);
    CHECK(t < 5);
  }
}
