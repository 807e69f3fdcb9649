#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

struct OracleQuery {
  std::vector<int> terminals;  // distinct ids in the oracle's universe
  double ell = 0.0;            // scale, > 0
  double epsilon = 0.0;        // in (0, 1)
};

struct OracleStats {
  double weight = 0.0;
  int edge_count = 0;
  int terminal_count = 0;
  double weak_ratio = 0.0;    // weight / (|T| * ell)
  double strong_ratio = 0.0;  // edges / |T|
  double max_edge_len = 0.0;
};

// A distance oracle answering (T, ell) with a subgraph of its host graph
// that preserves every terminal pair with d in [ell/8, ell] within
// (1+epsilon) and retains no edge longer than 2*ell.
class SpannerOracle {
 public:
  virtual ~SpannerOracle() = default;
  virtual std::string name() const = 0;
  virtual const WeightedGraph& host() const = 0;
  virtual Subgraph query(const OracleQuery& q) const = 0;
};

// Throws input_error unless ell > 0, epsilon in (0,1), terminals
// non-empty, distinct, and within [0, universe).
void validate_query(const OracleQuery& q, int universe);

OracleStats oracle_stats(const WeightedGraph& host, const Subgraph& out,
                         const OracleQuery& q);

// Per-field maxima over the batch: an empirical lower bound on the
// oracle's true weak/strong sparsity. Queries fan out across the worker
// pool; the maxima are order-independent.
OracleStats measure_sparsity(const SpannerOracle& oracle,
                             const std::vector<OracleQuery>& batch);

// Keeps only edges with weight <= maxlen.
Subgraph drop_edges_over(const WeightedGraph& host, const Subgraph& sub,
                         double maxlen);

// Re-hosts an oracle onto a target graph sharing the same vertex ids.
// Each inner output edge (u,v,w) maps to the target edge between u and v
// when one exists with weight <= w; otherwise it is decompressed into a
// shortest u-v path of the target. Sound whenever target shortest-path
// distances never exceed the inner host's.
class GraphAdaptedOracle : public SpannerOracle {
 public:
  GraphAdaptedOracle(const WeightedGraph& target,
                     std::shared_ptr<const SpannerOracle> inner);

  std::string name() const override;
  const WeightedGraph& host() const override { return *target_; }
  Subgraph query(const OracleQuery& q) const override;

 private:
  const WeightedGraph* target_;
  std::shared_ptr<const SpannerOracle> inner_;
};

}  // namespace sforge
