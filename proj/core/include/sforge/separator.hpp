#pragma once

#include <string>
#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

// An ordered family of path sets. levels[0] holds shortest paths of the
// graph; levels[i] holds shortest paths of the graph minus all vertices
// of earlier levels. Removing every listed vertex should disconnect the
// graph into small components; achieved balance is reported, and only
// the tree centroid provider guarantees <= 1/2.
struct SeparatorFamily {
  std::vector<std::vector<std::vector<int>>> levels;
  int max_component = 0;    // after removing all separator vertices
  double balance = 1.0;     // max_component / n

  std::vector<int> all_vertices() const;
};

class SeparatorProvider {
 public:
  virtual ~SeparatorProvider() = default;
  virtual std::string name() const = 0;
  // g must be connected with at least 2 vertices.
  virtual SeparatorFamily separate(const WeightedGraph& g) const = 0;
};

// Exact on trees: the centroid vertex, component sizes <= n/2.
class TreeCentroidProvider : public SeparatorProvider {
 public:
  std::string name() const override { return "centroid"; }
  SeparatorFamily separate(const WeightedGraph& g) const override;
};

// General graphs. Evaluates three candidate separators and keeps the one
// with the smallest maximum component: (a) the best single vertex,
// (b) the best single vertex followed by the best vertex of the residual
// graph (two levels), (c) for a shortest path tree rooted at vertex 0,
// the pair of root paths of the best non-tree edge (one level, two
// paths). Ties prefer fewer separator vertices, then option order.
class SptCycleProvider : public SeparatorProvider {
 public:
  std::string name() const override { return "spt-cycle"; }
  SeparatorFamily separate(const WeightedGraph& g) const override;
};

// Largest component size of g after deleting the given vertices.
int max_component_without(const WeightedGraph& g,
                          const std::vector<int>& removed);

}  // namespace sforge
