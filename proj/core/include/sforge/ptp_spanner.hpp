#pragma once

#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

// Preserves every demand pair within (1+epsilon) against one base
// shortest path. Demands must be shortest paths of weight <= ell that
// share at least one vertex with the base path. Internally works in the
// graph restricted to edges of weight <= ell plus the base path's own
// edges, runs the anchored single-source construction from every
// distinct demand endpoint, and retains the base subpath within
// path-distance 4/epsilon * ell of each closest-vertex anchor.
Subgraph ptp_single(const WeightedGraph& g, const std::vector<int>& base_path,
                    const std::vector<std::vector<int>>& demand_paths,
                    double ell, double epsilon);

// Multi-path variant: demands are grouped by the first base path (in
// list order) they share a vertex with; each group is handled by
// ptp_single against its base path. All base paths must be shortest in
// g. Throws input_error when a demand crosses no base path.
Subgraph ptp_spanner(const WeightedGraph& g,
                     const std::vector<std::vector<int>>& base_paths,
                     const std::vector<std::vector<int>>& demand_paths,
                     double ell, double epsilon);

}  // namespace sforge
