#pragma once

/// \file ptas.hpp
/// Tour pipeline: build a light subset spanner, split its edges into g
/// parts, contract the cheapest part, solve the contracted instance
/// exactly over a tree decomposition, then lift the walk back and
/// restore parity with a matching.  Approximation quality is reported
/// against known lower bounds; only feasibility is asserted.

#include <string>
#include <utility>
#include <vector>

#include "sforge/graph.hpp"
#include "sforge/oracle.hpp"
#include "sforge/subset_tsp.hpp"

namespace sforge {

enum class PartitionScheme {
  kBfsLayers,      // min-endpoint BFS depth mod g
  kGreedyBalance,  // heaviest edge first into the lightest part
};

struct ContractionPartition {
  int groups = 1;
  std::vector<std::vector<int>> parts;  // host edge ids; disjoint cover
  int chosen = 0;                       // argmin-weight part
  double chosen_weight = 0.0;
  int measured_width = -1;  // heuristic width after contracting the choice
};

// Splits the spanner's edges into `groups` parts and measures (never
// asserts) the width of the graph left by contracting the lightest one.
// bfs_root seeds the layer scheme.
ContractionPartition partition_spanner_edges(const WeightedGraph& host,
                                             const Subgraph& spanner,
                                             int groups, PartitionScheme scheme,
                                             int bfs_root);

struct PtasReport {
  double epsilon = 0.0;
  double spanner_lightness = 0.0;
  int g = 1;
  double w_x = 0.0;
  int measured_width = -1;
  double tour_weight = 0.0;
  double lower_bound = 0.0;
  bool lower_bound_exact = false;  // exact optimum vs half the tree bound
  double ratio = 0.0;
  int odd_vertices = 0;      // parity repairs needed after the lift
  bool exact_matching = true;
  std::vector<std::pair<int, int>> terminal_moves;  // terminal -> stand-in

  std::string to_json() const;
};

struct PtasResult {
  double tour_weight = 0.0;
  std::vector<TourEdge> edges;  // host edge ids with multiplicities
  PtasReport report;
};

struct PtasOptions {
  int width_cap = 12;
  bool check_invariants = true;
};

// Full pipeline.  Throws input_error when terminals span components or
// the contracted graph is wider than the cap (a larger epsilon or the
// other partition scheme shrinks it).
PtasResult run_ptas(const WeightedGraph& g, const std::vector<int>& terminals,
                    double epsilon, const SpannerOracle& oracle,
                    PartitionScheme scheme = PartitionScheme::kBfsLayers,
                    const PtasOptions& opt = {});

}  // namespace sforge
