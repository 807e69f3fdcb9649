#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sforge/errors.hpp"
#include "sforge/graph.hpp"
#include "sforge/rng.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/subset_tsp.hpp"
#include "sforge/tree_decomposition.hpp"
#include "sforge/verify.hpp"
#include "test_support.hpp"

using namespace sforge;

namespace {

std::vector<int> expand_multiset(const TourResult& tr) {
  std::vector<int> ids;
  for (const auto& te : tr.edges)
    for (int c = 0; c < te.mult; ++c) ids.push_back(te.edge);
  return ids;
}

void check_tour_shape(const WeightedGraph& g, const std::vector<int>& terms,
                      const TourResult& tr) {
  double total = 0.0;
  for (const auto& te : tr.edges) {
    CHECK(te.mult >= 1);
    const auto& ed = g.edge(te.edge);
    CHECK(((ed.u == te.u && ed.v == te.v) || (ed.u == te.v && ed.v == te.u)));
    CHECK(ed.w == doctest::Approx(te.w));
    total += te.w * te.mult;
  }
  CHECK(total == doctest::Approx(tr.weight));
  if (terms.size() >= 2) {
    CHECK(is_closed_walk_cover(g, expand_multiset(tr), terms));
  }
}

}  // namespace

TEST_CASE("held_karp_tour matches permutation brute force") {
  Rng rng(700);
  for (int trial = 0; trial < 15; ++trial) {
    int n = rng.uniform_int(4, 9);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, n));
    int k = rng.uniform_int(2, std::min(n, 6));
    auto terms = tsup::random_terminals(rng, n, k);
    double hk = held_karp_tour(g, terms);
    double bf = tsup::tsp_by_permutations(g, terms);
    CHECK(hk == doctest::Approx(bf).epsilon(1e-9));
  }
}

TEST_CASE("held_karp_tour trivial sizes and validation") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 2.0);
  CHECK(held_karp_tour(g, {}) == 0.0);
  CHECK(held_karp_tour(g, {2}) == 0.0);
  CHECK(held_karp_tour(g, {0, 2}) == doctest::Approx(6.0));
  CHECK_THROWS_AS(held_karp_tour(g, {0, 3}), input_error);
  std::vector<int> many;
  WeightedGraph big(25);
  for (int v = 0; v + 1 < 25; ++v) big.add_edge(v, v + 1, 1.0);
  for (int v = 0; v < 21; ++v) many.push_back(v);
  CHECK_THROWS_AS(held_karp_tour(big, many), input_error);
}

TEST_CASE("dp equals held_karp on random instances") {
  Rng rng(701);
  for (int trial = 0; trial < 15; ++trial) {
    int n = rng.uniform_int(4, 10);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(0, n / 2));
    int k = rng.uniform_int(2, std::min(n, 5));
    auto terms = tsup::random_terminals(rng, n, k);
    auto tr = subset_tsp_dp(g, terms);
    double hk = held_karp_tour(g, terms);
    CHECK(tr.weight == doctest::Approx(hk).epsilon(1e-9));
    check_tour_shape(g, terms, tr);
    CHECK(tr.width_used >= 1);
    CHECK(tr.table_peak >= 1);
  }
}

TEST_CASE("dp accepts a caller-provided decomposition") {
  Rng rng(702);
  auto g = tsup::random_connected_graph(rng, 9, 4);
  auto terms = tsup::random_terminals(rng, 9, 4);
  auto td = min_fill_decomposition(g);
  auto tr = subset_tsp_dp(g, terms, td);
  CHECK(tr.weight == doctest::Approx(held_karp_tour(g, terms)));
  check_tour_shape(g, terms, tr);
  // subdividing the edges costs at most width 2
  CHECK(tr.width_used >= 2);
  CHECK(tr.width_used <= std::max(td.width(), 2));
}

TEST_CASE("dp handles triangles trees and tiny terminal sets") {
  WeightedGraph tri(3);
  tri.add_edge(0, 1, 1.0);
  tri.add_edge(1, 2, 1.0);
  tri.add_edge(0, 2, 1.0);
  auto tr = subset_tsp_dp(tri, {0, 1, 2});
  CHECK(tr.weight == doctest::Approx(3.0));
  check_tour_shape(tri, {0, 1, 2}, tr);

  // closed walks on a tree double every needed edge
  WeightedGraph tree(6);
  tree.add_edge(0, 1, 2.0);
  tree.add_edge(1, 2, 3.0);
  tree.add_edge(1, 3, 1.0);
  tree.add_edge(0, 4, 5.0);
  tree.add_edge(4, 5, 1.0);
  auto tt = subset_tsp_dp(tree, {2, 3, 5});
  CHECK(tt.weight == doctest::Approx(2.0 * (3.0 + 1.0 + 2.0 + 5.0 + 1.0)));
  check_tour_shape(tree, {2, 3, 5}, tt);
  for (const auto& te : tt.edges) CHECK(te.mult == 2);

  CHECK(subset_tsp_dp(tree, {}).weight == 0.0);
  CHECK(subset_tsp_dp(tree, {4}).weight == 0.0);
  auto pair_tr = subset_tsp_dp(tree, {2, 3});
  CHECK(pair_tr.weight == doctest::Approx(8.0));
}

TEST_CASE("dp rejects split terminals and wide decompositions") {
  WeightedGraph split(4);
  split.add_edge(0, 1, 1.0);
  split.add_edge(2, 3, 1.0);
  CHECK_THROWS_AS(subset_tsp_dp(split, {0, 2}), input_error);

  WeightedGraph k8(8);
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) k8.add_edge(a, b, 1.0);
  SubsetTspOptions opt;
  opt.width_cap = 4;
  CHECK_THROWS_AS(subset_tsp_dp(k8, {0, 1, 2}, opt), input_error);
}

TEST_CASE("table reduction changes nothing but the peak") {
  Rng rng(703);
  for (int trial = 0; trial < 6; ++trial) {
    int n = rng.uniform_int(5, 9);
    auto g = tsup::random_connected_graph(rng, n, rng.uniform_int(1, 4));
    auto terms = tsup::random_terminals(rng, n, rng.uniform_int(2, 4));
    SubsetTspOptions raw;
    raw.reduce_tables = false;
    auto full = subset_tsp_dp(g, terms, raw);
    auto reduced = subset_tsp_dp(g, terms);
    CHECK(full.weight == doctest::Approx(reduced.weight));
    CHECK(reduced.table_peak <= full.table_peak);
  }
}

TEST_CASE("tour json exposes the walk") {
  WeightedGraph tri(3);
  tri.add_edge(0, 1, 1.5);
  tri.add_edge(1, 2, 1.5);
  tri.add_edge(0, 2, 1.5);
  auto tr = subset_tsp_dp(tri, {0, 1, 2});
  auto j = nlohmann::json::parse(tr.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["weight"].get<double>() == doctest::Approx(4.5));
  CHECK(j["edges"].size() == 3);
  CHECK(j["width_used"].get<int>() >= 1);
  CHECK(j["table_peak"].get<long>() >= 1);
}
