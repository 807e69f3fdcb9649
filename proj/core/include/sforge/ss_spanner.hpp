#pragma once

#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

// Result of the anchored single-source construction: shortest paths from
// `source` to a set of anchor vertices on a base shortest path. The base
// path is oriented left-to-right with the smaller endpoint id on the
// left. anchor_pos lists anchor positions (indices into base_path) in
// ascending order; anchor_pos[y0_slot] is the closest-vertex anchor y0.
struct AnchoredPathSet {
  int source = -1;
  std::vector<int> base_path;
  std::vector<double> prefix;  // cumulative base-path weight per position
  std::vector<int> anchor_pos;
  int y0_slot = 0;
  std::vector<std::vector<int>> paths;  // edge ids, aligned with anchor_pos
  double R = 0.0;                       // d_G(source, base_path)

  int left_count() const { return y0_slot; }
  int right_count() const {
    return static_cast<int>(anchor_pos.size()) - 1 - y0_slot;
  }
  // Sum of anchor-path weights on one side (side < 0 left, > 0 right),
  // including the y0 path in both.
  double side_weight(const WeightedGraph& g, int side) const;
  // Base-path distance from y0 to the outermost anchor on one side.
  double side_span(int side) const;
  Subgraph all_edges() const;
};

// Anchors are maximal under the rule: the next anchor is the first base
// path vertex y beyond the previous one with
// (1+eps) * d(source, y) < d(source, prev) + d_P(prev, y),
// scanned rightward then leftward from y0. A source on the base path
// yields the single trivial anchor y0 = source. Throws contract_violation
// if base_path is not a shortest path, input_error on malformed input.
AnchoredPathSet ss_spanner(const WeightedGraph& g,
                           const std::vector<int>& base_path, int source,
                           double epsilon);

// Validates that the vertex sequence is a path in g whose prefix
// distances are graph-shortest; returns per-position cumulative weights.
std::vector<double> verify_shortest_path(const WeightedGraph& g,
                                         const std::vector<int>& path);

// Walk-to-path variant: breakpoints are walk vertices where the walk
// distance since the previous breakpoint exceeds eps * d(vertex, P);
// ss_spanner runs from each breakpoint. Output preserves walk-to-path
// distances within (1 + 4*eps) given the walk's edges plus the base path.
Subgraph walk_to_path_spanner(const WeightedGraph& g,
                              const std::vector<int>& walk,
                              const std::vector<int>& base_path,
                              double epsilon);

}  // namespace sforge
