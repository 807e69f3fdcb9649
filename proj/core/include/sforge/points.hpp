#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

// A finite metric space: either explicit coordinates (Euclidean mode) or
// an n x n distance matrix. Exactly one of the two is populated.
struct PointSet {
  std::vector<std::vector<double>> coords;
  std::vector<std::vector<double>> matrix;

  bool matrix_mode() const { return !matrix.empty(); }
  int size() const {
    return static_cast<int>(matrix_mode() ? matrix.size() : coords.size());
  }
  int dimension() const {
    return matrix_mode() ? 0
                         : (coords.empty() ? 0
                                           : static_cast<int>(coords[0].size()));
  }
  double dist(int i, int j) const;
};

// Validate and wrap. Coordinate mode checks equal dimensions and finite
// values; matrix mode checks symmetry, zero diagonal, non-negativity and
// the triangle inequality (relative tolerance kRelTol).
PointSet points_from_coords(std::vector<std::vector<double>> coords);
PointSet points_from_matrix(std::vector<std::vector<double>> matrix);

// CSV: one point per line, comma-separated coordinates, '#' comments.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv_file(const std::string& path);
void write_points_csv(std::ostream& out, const PointSet& ps);

// Matrix mode JSON: {"n": N, "dist": [[...], ...]}.
PointSet read_metric_json(std::istream& in);
PointSet read_metric_json_file(const std::string& path);
void write_metric_json(std::ostream& out, const PointSet& ps);

// Complete graph over the point ids with w = pairwise distance.
// Coincident point pairs (distance 0) are left non-adjacent; edge weights
// must be positive.
WeightedGraph complete_graph(const PointSet& ps);

// Greedy r-net over `subset` (point ids, scanned in the given order):
// a point joins the net iff no earlier net point is within r. Result
// covers the subset within r and net points are pairwise > r apart.
std::vector<int> r_net(const PointSet& ps, const std::vector<int>& subset,
                       double r);

}  // namespace sforge
