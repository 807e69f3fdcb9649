#pragma once

/// \file subset_tsp.hpp
/// Exact shortest closed walk through a terminal set, computed by a
/// dynamic program over a nice tree decomposition.  Edge multiplicities
/// are modelled by replacing every edge with max(2, k-1) parallel
/// two-edge paths (half weight each), which keeps the graph simple and
/// the width at most max(width, 2).  Tables hold degree-parity labels
/// per bag vertex plus a connectivity partition of the labelled ones,
/// and are shrunk by the rank-based representative reduction.

#include <array>
#include <string>
#include <vector>

#include "sforge/graph.hpp"
#include "sforge/tree_decomposition.hpp"

namespace sforge {

struct TourEdge {
  int edge = -1;  // host edge id
  int u = -1;
  int v = -1;
  double w = 0.0;
  int mult = 0;  // traversal count in the walk
};

struct TourResult {
  double weight = 0.0;
  std::vector<TourEdge> edges;  // multiplicity >= 1 only, by edge id
  int width_used = -1;          // width of the nice decomposition used
  long table_peak = 0;          // largest table seen, after reduction

  std::string to_json() const;
};

struct SubsetTspOptions {
  int width_cap = 12;          // refuse decompositions wider than this
  bool reduce_tables = true;   // representative reduction per label class
  bool check_invariants = true;
};

// Exact optimum over the given decomposition of g.  Throws input_error
// when terminals sit in different components or the width cap is hit.
TourResult subset_tsp_dp(const WeightedGraph& g,
                         const std::vector<int>& terminals,
                         const TreeDecomposition& td,
                         const SubsetTspOptions& opt = {});

// Same, over a heuristic decomposition built internally.
TourResult subset_tsp_dp(const WeightedGraph& g,
                         const std::vector<int>& terminals,
                         const SubsetTspOptions& opt = {});

// Closed-walk optimum via the bitmask recurrence on terminal distances.
// Exact but exponential in k; refuses k > 20.
double held_karp_tour(const WeightedGraph& g,
                      const std::vector<int>& terminals);

}  // namespace sforge
