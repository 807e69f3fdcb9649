#pragma once

#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

// Union-find over 0..n-1 with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(int n);
  int find(int x);
  // Returns false if x and y were already joined.
  bool unite(int x, int y);
  int set_count() const { return sets_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int sets_;
};

// Kruskal forest. Edges are taken in (weight, min endpoint, max endpoint,
// id) order, so the result is deterministic even with ties. Spans every
// component; on a connected graph this is the minimum spanning tree.
Subgraph minimum_spanning_forest(const WeightedGraph& g);

// Same, restricted to the given candidate edge ids.
Subgraph minimum_spanning_forest(const WeightedGraph& g,
                                 const std::vector<int>& edge_ids);

}  // namespace sforge
