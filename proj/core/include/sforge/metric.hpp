#pragma once

/// \file metric.hpp
/// Metric completion of a terminal set.  dist is the full k x k matrix of
/// graph distances; kappa maps each terminal pair back to a witness
/// shortest path in the host graph.  The witness for pair (i,j) with i<j is
/// computed from terminal i's shortest path tree, so its forward weight sum
/// reproduces dist[i][j] exactly.

#include <vector>

#include "sforge/graph.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

class TerminalMetric {
 public:
  const std::vector<int>& terminals() const { return terminals_; }
  int size() const { return static_cast<int>(terminals_.size()); }
  int terminal(int i) const { return terminals_[static_cast<size_t>(i)]; }

  double dist(int i, int j) const {
    return dist_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  const std::vector<std::vector<double>>& matrix() const { return dist_; }

  /// Witness path vertices, terminal(i) .. terminal(j).
  std::vector<int> kappa_vertices(int i, int j) const;
  /// Witness path edge ids (host graph), i-to-j order.
  std::vector<int> kappa_edges(int i, int j) const;

  /// Index of a host vertex in the terminal list, -1 if not a terminal.
  int index_of(int vertex) const;

  friend TerminalMetric metric_completion(const WeightedGraph& g,
                                          const std::vector<int>& terminals);

 private:
  std::vector<int> terminals_;
  std::vector<int> index_of_;
  std::vector<std::vector<double>> dist_;
  // canonical witnesses for i < j
  std::vector<std::vector<std::vector<int>>> kv_;  // vertices
  std::vector<std::vector<std::vector<int>>> ke_;  // edge ids
};

/// Throws input_error when some terminal pair is disconnected.
TerminalMetric metric_completion(const WeightedGraph& g,
                                 const std::vector<int>& terminals);

/// Metric axioms up to relative tolerance: symmetry, zero diagonal,
/// triangle inequality.  Returns the worst triangle slack (negative means
/// a violation beyond tolerance was found).
bool check_metric_axioms(const std::vector<std::vector<double>>& d,
                         double tol = kRelTol);

}  // namespace sforge
