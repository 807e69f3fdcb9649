#pragma once

#include <limits>
#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest path tree from a single source.  Ties between equal-length
/// paths are broken toward the smaller parent vertex id, then the smaller
/// edge id, so path reconstruction is deterministic across platforms.
struct ShortestPathTree {
  int source = -1;
  std::vector<double> dist;        ///< kInf where unreachable
  std::vector<int> parent;         ///< -1 at source and unreachable vertices
  std::vector<int> parent_edge;    ///< edge id into the host graph, -1 likewise

  bool reached(int v) const { return dist[static_cast<size_t>(v)] < kInf; }

  /// Vertex sequence source..v.  Empty when v is unreachable.
  std::vector<int> path_to(int v) const;

  /// Edge ids along path_to(v), in source-to-v order.
  std::vector<int> path_edges_to(int v) const;
};

ShortestPathTree dijkstra(const WeightedGraph& g, int source);

/// Sum of weights along the tree path, accumulated from the source side.
/// Equals dist[v] bit-for-bit because relaxation accumulates in the same
/// order.
double path_weight(const WeightedGraph& g, const std::vector<int>& edge_ids);

/// Validates that `vertices` is a path in g (consecutive pairs joined by
/// edges) and returns the edge ids used, picking the lightest parallel
/// edge.  Throws input_error otherwise.
std::vector<int> path_edges_of(const WeightedGraph& g,
                               const std::vector<int>& vertices);

}  // namespace sforge
