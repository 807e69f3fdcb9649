#pragma once

#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

struct PairStretch {
  int u = -1;
  int v = -1;
  double d_host = 0.0;
  double d_sub = 0.0;
  double ratio = 1.0;
};

struct StretchReport {
  // Worst ratio d_sub / d_host over the checked pairs (1.0 when no pair
  // has positive host distance).
  double max_stretch = 1.0;
  int pairs_checked = 0;
  int unreachable_pairs = 0;  // finite in host, infinite in sub
  int worst_u = -1;
  int worst_v = -1;
  double worst_d_host = 0.0;
  double worst_d_sub = 0.0;
  std::vector<PairStretch> per_pair;

  bool all_within(double t, double tol) const;
};

// Compares shortest-path distances between every pair of the given
// vertices in the host graph and in the subgraph (edge ids into host).
StretchReport measure_stretch(const WeightedGraph& host, const Subgraph& sub,
                              const std::vector<int>& vertices);

// Same, restricted to pairs whose host distance lies in [lo, hi].
StretchReport measure_stretch_window(const WeightedGraph& host,
                                     const Subgraph& sub,
                                     const std::vector<int>& vertices,
                                     double lo, double hi);

// w(spanner)/w(baseline); the baseline must have positive weight.
double measure_lightness(const WeightedGraph& host, const Subgraph& spanner,
                         const Subgraph& baseline);

// True when the edge multiset (host edge ids, repeats allowed) has even
// degree at every vertex and its support is connected, covering every
// listed vertex. Empty multiset passes only if vertices is empty or a
// single vertex.
bool is_closed_walk_cover(const WeightedGraph& host,
                          const std::vector<int>& edge_multiset,
                          const std::vector<int>& vertices);

}  // namespace sforge
