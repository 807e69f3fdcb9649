#pragma once

#include <vector>

#include "sforge/oracle.hpp"
#include "sforge/points.hpp"

namespace sforge {

// Greedy (1+epsilon)-spanner over a vertex subset of a host graph whose
// edges realize the pairwise metric (e.g. a complete geometric graph).
// Candidate pairs are host edges between subset vertices, scanned in
// (weight, smaller id, larger id) order; an edge is taken iff the current
// selection stretches the pair beyond 1+epsilon.
Subgraph greedy_spanner(const WeightedGraph& host,
                        const std::vector<int>& subset, double epsilon);

// Oracle over a Euclidean (or explicit-metric) point set: greedy
// (1+epsilon)-spanner on the queried terminals, then every edge of
// length >= 2*ell removed.
class EuclideanOracle : public SpannerOracle {
 public:
  explicit EuclideanOracle(PointSet ps);

  std::string name() const override { return "euclidean"; }
  const WeightedGraph& host() const override { return host_; }
  Subgraph query(const OracleQuery& q) const override;
  const PointSet& points() const { return points_; }

 private:
  PointSet points_;
  WeightedGraph host_;
};

}  // namespace sforge
