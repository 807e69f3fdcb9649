#include <doctest.h>

#include <sstream>

#include "sforge/errors.hpp"
#include "sforge/graph.hpp"
#include "sforge/graph_io.hpp"
#include "sforge/points.hpp"
#include "sforge/report.hpp"
#include "sforge/rng.hpp"
#include "test_support.hpp"

using namespace sforge;

TEST_CASE("add_edge validates input") {
  WeightedGraph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 0, 1.0), input_error);
  CHECK_THROWS_AS(g.add_edge(0, 3, 1.0), input_error);
  CHECK_THROWS_AS(g.add_edge(-1, 1, 1.0), input_error);
  CHECK_THROWS_AS(g.add_edge(0, 1, 0.0), input_error);
  CHECK_THROWS_AS(g.add_edge(0, 1, -2.0), input_error);
  g.add_edge(0, 1, 1.0);
  CHECK_THROWS_AS(g.add_edge(1, 0, 2.0), input_error);  // duplicate pair

  WeightedGraph p(3, true);
  p.add_edge(0, 1, 2.0);
  p.add_edge(1, 0, 1.0);
  CHECK(p.edge_count() == 2);
  CHECK(p.edge(p.find_edge(0, 1)).w == 1.0);  // lightest parallel edge
}

TEST_CASE("components and connectivity") {
  WeightedGraph g(5);
  g.add_edge(0, 1, 1.0);
  g.add_edge(3, 4, 1.0);
  CHECK_FALSE(g.is_connected());
  auto comps = g.components();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<int>{0, 1});
  CHECK(comps[1] == std::vector<int>{2});
  CHECK(comps[2] == std::vector<int>{3, 4});
  auto ids = g.component_ids();
  CHECK(ids[0] == ids[1]);
  CHECK(ids[3] == ids[4]);
  CHECK(ids[0] != ids[2]);
  CHECK_FALSE(g.is_tree());
  WeightedGraph t(3);
  t.add_edge(0, 1, 1.0);
  t.add_edge(1, 2, 1.0);
  CHECK(t.is_tree());
}

TEST_CASE("subgraph materialize and union") {
  WeightedGraph g(4);
  int e0 = g.add_edge(0, 1, 1.5);
  g.add_edge(1, 2, 2.5);
  int e2 = g.add_edge(2, 3, 3.5);
  Subgraph a;
  a.add(e2);
  a.add(e0);
  a.add(e0);
  CHECK(a.edge_ids == std::vector<int>{e0, e2});
  CHECK(a.weight(g) == doctest::Approx(5.0));
  Subgraph b;
  b.add(1);
  auto u = subgraph_union(a, b);
  CHECK(u.size() == 3);
  std::vector<int> emap;
  auto m = a.materialize(g, &emap);
  CHECK(m.vertex_count() == 4);
  CHECK(m.edge_count() == 2);
  CHECK(emap == std::vector<int>{e0, e2});
}

TEST_CASE("extract_induced keeps inner edges only") {
  WeightedGraph g(5);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 3, 1.0);
  g.add_edge(3, 4, 1.0);
  auto view = extract_induced(g, {1, 2, 3});
  CHECK(view.graph.vertex_count() == 3);
  CHECK(view.graph.edge_count() == 2);
  CHECK(view.to_global == std::vector<int>{1, 2, 3});
  CHECK(view.global_to_local[0] == -1);
  CHECK(view.global_to_local[2] == 1);
  for (int le = 0; le < view.graph.edge_count(); ++le) {
    int he = view.edge_to_global[static_cast<size_t>(le)];
    const auto& inner = view.graph.edge(le);
    const auto& host = g.edge(he);
    CHECK(view.to_global[static_cast<size_t>(inner.u)] +
              view.to_global[static_cast<size_t>(inner.v)] ==
          host.u + host.v);
  }
}

TEST_CASE("graph json round trip") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.25);
  g.add_edge(2, 3, 0.5);
  std::ostringstream os;
  write_graph_json(os, g, {0, 3});
  std::istringstream is(os.str());
  auto back = read_graph_json(is);
  CHECK(back.graph.vertex_count() == 4);
  CHECK(back.graph.edge_count() == 2);
  CHECK(back.terminals == std::vector<int>{0, 3});
  CHECK(back.graph.edge(0).w == doctest::Approx(1.25));
}

TEST_CASE("graph json rejects malformed input") {
  std::istringstream bad1("not json at all");
  CHECK_THROWS_AS(read_graph_json(bad1), input_error);
  std::istringstream bad2(R"({"vertices": 2, "edges": [[0, 5, 1.0]]})");
  CHECK_THROWS_AS(read_graph_json(bad2), input_error);
  std::istringstream bad3(R"({"edges": []})");
  CHECK_THROWS_AS(read_graph_json(bad3), input_error);
}

TEST_CASE("edge list reader") {
  std::istringstream is("# comment\n0 1 2.0\n1 2 3.0\n");
  auto inst = read_edge_list(is);
  CHECK(inst.graph.vertex_count() == 3);
  CHECK(inst.graph.edge_count() == 2);
}

TEST_CASE("dot export marks terminals") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 1.0);
  std::ostringstream os;
  write_dot(os, g, {1});
  auto s = os.str();
  CHECK(s.find("graph") != std::string::npos);
  CHECK(s.find("box") != std::string::npos);
}

TEST_CASE("normalize_terminals sorts, dedupes, validates") {
  WeightedGraph g(5);
  CHECK(normalize_terminals(g, {3, 1, 3}) == std::vector<int>{1, 3});
  CHECK_THROWS_AS(normalize_terminals(g, {5}), input_error);
  CHECK_THROWS_AS(normalize_terminals(g, {-1}), input_error);
}

TEST_CASE("rng stream is the portable mt19937_64") {
  Rng r(1);
  // first three raw draws of std::mt19937_64 seeded with 1
  CHECK(r.next_u64() == 8323445853463659930ULL);
  CHECK(r.next_u64() == 2516265689700432462ULL);
  CHECK(r.next_u64() == 2469588189546311528ULL);
}

TEST_CASE("rng helpers behave") {
  Rng r(42);
  for (int i = 0; i < 1000; ++i) {
    double x = r.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    int v = r.uniform_int(3, 9);
    CHECK(v >= 3);
    CHECK(v <= 9);
  }
  auto s = r.sample_indices(10, 4);
  CHECK(s.size() == 4);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  Rng a(7), b(7);
  for (int i = 0; i < 50; ++i) CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("points validation and round trips") {
  CHECK_THROWS_AS(points_from_coords({{0.0, 1.0}, {2.0}}), input_error);
  CHECK_THROWS_AS(points_from_matrix({{0.0, 1.0}, {2.0, 0.0}}), input_error);
  CHECK_THROWS_AS(points_from_matrix({{0.0, -1.0}, {-1.0, 0.0}}), input_error);
  // triangle violation: d(0,2) > d(0,1) + d(1,2)
  CHECK_THROWS_AS(points_from_matrix({{0.0, 1.0, 9.0},
                                      {1.0, 0.0, 1.0},
                                      {9.0, 1.0, 0.0}}),
                  input_error);

  auto ps = points_from_coords({{0.0, 0.0}, {3.0, 4.0}});
  CHECK(ps.dist(0, 1) == doctest::Approx(5.0));
  std::ostringstream os;
  write_points_csv(os, ps);
  std::istringstream is(os.str());
  auto back = read_points_csv(is);
  CHECK(back.size() == 2);
  CHECK(back.dist(0, 1) == doctest::Approx(5.0));

  auto pm = points_from_matrix({{0.0, 2.0}, {2.0, 0.0}});
  std::ostringstream om;
  write_metric_json(om, pm);
  std::istringstream im(om.str());
  auto backm = read_metric_json(im);
  CHECK(backm.matrix_mode());
  CHECK(backm.dist(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("complete_graph skips coincident pairs") {
  auto ps = points_from_coords({{0.0}, {0.0}, {1.0}});
  auto g = complete_graph(ps);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);  // (0,2) and (1,2); (0,1) has distance 0
}

TEST_CASE("r_net covering and packing, exhaustively") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> coords;
    int n = rng.uniform_int(5, 25);
    for (int i = 0; i < n; ++i)
      coords.push_back({rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)});
    auto ps = points_from_coords(std::move(coords));
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (rng.uniform01() < 0.7) subset.push_back(i);
    double r = rng.uniform(0.5, 4.0);
    auto net = r_net(ps, subset, r);
    for (size_t i = 0; i < net.size(); ++i)
      for (size_t j = i + 1; j < net.size(); ++j)
        CHECK(ps.dist(net[i], net[j]) > r);
    for (int y : subset) {
      double closest = tsup::kBig;
      for (int p : net) closest = std::min(closest, ps.dist(p, y));
      CHECK(closest <= r);
    }
  }
  auto same = points_from_coords({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
  CHECK(r_net(same, {0, 1, 2}, 0.5).size() == 1);
  CHECK(r_net(same, {}, 0.5).empty());
}

TEST_CASE("nine decimal rounding") {
  CHECK(round9(1.00000000049) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(format9(2.5) == "2.500000000");
  CHECK(format9(round9(1.0 / 3.0)) == "0.333333333");
}
