#pragma once

/// \file graph.hpp
/// Undirected weighted graph with stable edge ids, the base type every
/// construction in this library works on.  Vertices are 0..n-1.  Edge
/// weights are strictly positive doubles.  Parallel edges are rejected
/// unless the graph was created with allow_parallel.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sforge/errors.hpp"

namespace sforge {

struct Edge {
  int u = -1;
  int v = -1;
  double w = 0.0;
};

class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n, bool allow_parallel = false);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool allows_parallel() const { return allow_parallel_; }

  /// Adds edge {u,v} and returns its id.  Throws input_error on self loops,
  /// out-of-range endpoints, non-positive or non-finite weights, and on
  /// duplicate pairs unless parallel edges are allowed.
  int add_edge(int u, int v, double w);

  const Edge& edge(int id) const { return edges_[static_cast<size_t>(id)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Incident (neighbor, edge id) pairs in insertion order.
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adj_[static_cast<size_t>(v)];
  }

  /// Id of the lightest edge joining u and v, or -1.
  int find_edge(int u, int v) const;

  double total_weight() const;

  bool is_connected() const;
  bool is_tree() const;

  /// Connected components as sorted vertex lists, ordered by smallest member.
  std::vector<std::vector<int>> components() const;

  /// Component id per vertex, components numbered by smallest member.
  std::vector<int> component_ids() const;

 private:
  bool allow_parallel_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// Edge-id subset of a fixed host graph.  Ids are kept sorted and unique.
struct Subgraph {
  std::vector<int> edge_ids;

  void add(int id);
  void add_all(const std::vector<int>& ids);
  bool contains(int id) const;
  int size() const { return static_cast<int>(edge_ids.size()); }
  double weight(const WeightedGraph& host) const;

  /// Materializes the subset as a standalone graph on the host vertex set.
  /// new-edge-id -> host-edge-id mapping is returned through edge_map.
  WeightedGraph materialize(const WeightedGraph& host,
                            std::vector<int>* edge_map = nullptr) const;
};

Subgraph subgraph_union(const Subgraph& a, const Subgraph& b);

/// Extraction of an induced subgraph onto a compact vertex space.
struct SubgraphView {
  WeightedGraph graph;             ///< induced graph on local ids 0..m-1
  std::vector<int> to_global;      ///< local vertex -> host vertex
  std::vector<int> global_to_local;///< host vertex -> local vertex or -1
  std::vector<int> edge_to_global; ///< local edge id -> host edge id
};

SubgraphView extract_induced(const WeightedGraph& g,
                             const std::vector<int>& vertices);

/// A graph instance as read from or written to disk.
struct GraphInstance {
  WeightedGraph graph;
  std::vector<int> terminals;
};

}  // namespace sforge
