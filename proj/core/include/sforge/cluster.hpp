#pragma once

/// \file cluster.hpp
/// Iterative clustering over the subdivided terminal-metric MST.  One
/// hierarchy run per weight class: level-0 clusters are chopped from the
/// subdivided tree, then each level regroups the previous clusters along
/// the cluster tree and the surviving bucket pairs, buying shortest paths
/// (cheap side) or one oracle spanner (dense side) per level.  Credits
/// minted on tree pieces fund every purchase through the shared ledger.

#include <vector>

#include "sforge/buckets.hpp"
#include "sforge/graph.hpp"
#include "sforge/ledger.hpp"
#include "sforge/metric.hpp"
#include "sforge/oracle.hpp"

namespace sforge {

struct MstPiece {
  int u = -1;  // subdivided-tree node ids
  int v = -1;
  double w = 0.0;
  int mst_edge = -1;  // index into SubdividedMst::edges
  int segment = 0;    // 0-based position along the edge, counted from side a
};

struct SubdividedMstEdge {
  int a = -1;  // metric indices, a < b
  int b = -1;
  double w = 0.0;
  int segments = 1;
};

// Nodes 0..k-1 are the metric terminals; higher ids are split points.
// Every edge of weight more than w0 is cut into equal pieces of weight
// at most w0 so that credits can be attached at a uniform granularity.
struct SubdividedMst {
  int terminal_count = 0;
  int node_count = 0;
  std::vector<SubdividedMstEdge> edges;
  std::vector<MstPiece> pieces;
  // node -> (neighbor node, piece id), sorted by neighbor
  std::vector<std::vector<std::pair<int, int>>> adj;
};

// Kruskal over the metric in (weight, a, b) order; returns index pairs.
std::vector<std::pair<int, int>> metric_mst_pairs(const TerminalMetric& metric);

SubdividedMst subdivide_mst(const TerminalMetric& metric,
                            const std::vector<std::pair<int, int>>& mst_pairs,
                            double w0);

// Bottom-up greedy chop into node sets inducing connected subtrees of
// piece-weight diameter at least ell0 (at most ~3*ell0; one merged root
// remainder may reach 6*ell0).  A tree whose total diameter is below
// ell0 comes back as a single set.  Every node lands in exactly one set.
std::vector<std::vector<int>> chop_tree(const SubdividedMst& tree,
                                        double ell0);

struct ClusterOptions {
  double epsilon = 0.01;
  double g = 29.0;
  double credit_rate = 1.0;  // credits per unit of diameter, fixed upfront
  bool check_invariants = true;
};

struct LevelReport {
  int class_j = 0;
  int level = 0;
  double ell = 0.0;
  int bucket_edges = 0;
  int kept_edges = 0;  // cluster-graph edges surviving the stretch filter
  int high_nodes = 0;
  int clusters_phase1 = 0;
  int clusters_phase2 = 0;
  int clusters_phase3 = 0;
  int clusters_phase4 = 0;
  double edges_bought = 0.0;  // spanner weight added at this level
  int step1_edges = 0;
  int oracle_calls = 0;
  int guard_edges = 0;    // fallback shortest paths bought for kept pairs
  int steal_events = 0;   // payments drawn from other clusters' leftovers
  int reserve_topups = 0; // reserve mints needed beyond the upfront float
  bool sparse_tail = false;  // no phase 1-3 cluster; purchases hit the reserve
  double ledger_residual = 0.0;  // credits stranded in retired accounts
};

// Runs the class-j hierarchy, adding bought edges to `spanner` (edge ids
// into g) and moving credits through `ledger`.  The oracle must answer
// queries on g's vertex ids.  Returns one report per level (>= 1) run.
std::vector<LevelReport> run_hierarchy(const WeightedGraph& g,
                                       const TerminalMetric& metric,
                                       const EdgeBuckets& buckets, int class_j,
                                       const SpannerOracle& oracle,
                                       CreditLedger& ledger,
                                       int reserve_account, Subgraph& spanner,
                                       const ClusterOptions& opt);

}  // namespace sforge
