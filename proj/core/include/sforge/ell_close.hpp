#pragma once

#include <memory>
#include <vector>

#include "sforge/oracle.hpp"
#include "sforge/separator.hpp"

namespace sforge {

struct EllCloseDiagnostics {
  int max_depth = 0;
  int separator_calls = 0;
  int ptp_calls = 0;
  double worst_balance = 0.0;
  double output_weight = 0.0;
};

// Recursive separator construction: per separator level, demands
// crossing that level's path set are preserved by ptp_spanner in the
// graph minus earlier levels' vertices; surviving demands recurse into
// the components left after removing the whole separator. Demands must
// be shortest paths between terminal pairs, of weight <= ell, with no
// intermediate terminals. Every demand pair ends up preserved within
// (1+epsilon). depth_cap <= 0 selects the default 4*ceil(log2 n) + 4;
// exceeding the cap (a provider balance failure) throws
// invariant_violation carrying balance statistics.
Subgraph ell_close_spanner(const WeightedGraph& g,
                           const std::vector<int>& terminals,
                           const std::vector<std::vector<int>>& demand_paths,
                           double ell, double epsilon,
                           const SeparatorProvider& provider,
                           EllCloseDiagnostics* diag = nullptr,
                           int depth_cap = 0);

// Canonical demand set for a terminal set: one shortest path per
// terminal pair with distance <= ell, skipping any pair whose canonical
// path passes through a third terminal (such pairs split into the
// covered sub-pairs).
std::vector<std::vector<int>> terminal_demand_paths(
    const WeightedGraph& g, const std::vector<int>& terminals, double ell);

// Definition-1 oracle backed by ell_close_spanner: prunes host edges
// longer than 2*ell, builds the demand set per surviving component, and
// unions the per-component spanners.
class SeparatorOracle : public SpannerOracle {
 public:
  SeparatorOracle(const WeightedGraph& host,
                  std::shared_ptr<const SeparatorProvider> provider);

  std::string name() const override;
  const WeightedGraph& host() const override { return *host_; }
  Subgraph query(const OracleQuery& q) const override;

  // Diagnostics of the most recent query.
  const EllCloseDiagnostics& last_diagnostics() const { return last_; }

 private:
  const WeightedGraph* host_;
  std::shared_ptr<const SeparatorProvider> provider_;
  mutable EllCloseDiagnostics last_;
};

}  // namespace sforge
