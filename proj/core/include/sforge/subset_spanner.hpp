#pragma once

/// \file subset_spanner.hpp
/// Light subset spanners from a sparsity oracle.  The builder completes
/// the terminal metric, buys the shortest-path image of its MST plus all
/// cheap pairs, then runs one credit-funded cluster hierarchy per weight
/// class over the bucketed remaining pairs.  Total weight stays within a
/// constant-times-oracle-sparsity factor of the Steiner weight while all
/// terminal pairs are preserved within 1+epsilon (after rescaling).

#include <memory>
#include <string>
#include <vector>

#include "sforge/cluster.hpp"
#include "sforge/graph.hpp"
#include "sforge/oracle.hpp"

namespace sforge {

struct SubsetSpannerOptions {
  double epsilon = 0.1;
  // Divide epsilon by the worst-case stretch constant so the final
  // stretch is 1+epsilon rather than 1+O(epsilon).
  bool rescale = false;
  double g = 29.0;            // cluster diameter budget, in level scales
  double credit_scale = 64.0; // multiplies the per-diameter credit rate
  bool check_invariants = true;
};

struct SubsetSpannerResult {
  Subgraph spanner;
  double lightness = 0.0;    // spanner weight / 2-approx Steiner weight
  double max_stretch = 1.0;  // worst terminal pair, spanner vs host
  int oracle_calls = 0;
  int levels = 0;
  std::vector<LevelReport> per_level;  // in run order across classes

  double epsilon_applied = 0.0;  // epsilon after any rescale
  double w0 = 0.0;
  double credit_rate = 0.0;
  double ws_estimate = 0.0;  // calibrated weak-sparsity lower bound
  int guard_edges = 0;
  int steal_events = 0;
  int reserve_topups = 0;
  double credit_minted = 0.0;
  double credit_spent = 0.0;
  double credit_residual = 0.0;
  bool credit_conserved = false;

  std::string to_json() const;
};

// Builds a subset spanner for `terminals` on g.  The oracle must be
// hosted on g.  Throws input_error for invalid inputs and
// invariant_violation when a run-time check fails.
SubsetSpannerResult build_subset_spanner(const WeightedGraph& g,
                                         const std::vector<int>& terminals,
                                         const SpannerOracle& oracle,
                                         const SubsetSpannerOptions& opt);

// Oracle built from the spanner construction itself: answers a query by
// restricting the terminal-metric MST to edges of weight at most ell,
// building one rescaled subset spanner per surviving component with two
// or more terminals, and keeping only edges of weight at most 2*ell.
class ComponentSpannerOracle : public SpannerOracle {
 public:
  ComponentSpannerOracle(const WeightedGraph& g,
                         std::shared_ptr<const SpannerOracle> inner,
                         SubsetSpannerOptions opt);

  std::string name() const override;
  const WeightedGraph& host() const override { return *g_; }
  Subgraph query(const OracleQuery& q) const override;

  // Largest per-component spanner weight over metric-MST weight seen in
  // the most recent query; 0 when no component had two terminals.
  double last_max_lightness() const { return last_max_lightness_; }

 private:
  const WeightedGraph* g_;
  std::shared_ptr<const SpannerOracle> inner_;
  SubsetSpannerOptions opt_;
  mutable double last_max_lightness_ = 0.0;
};

}  // namespace sforge
