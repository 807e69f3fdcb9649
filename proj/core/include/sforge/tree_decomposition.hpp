#pragma once

/// \file tree_decomposition.hpp
/// Tree decompositions: a min-fill heuristic, PACE-format I/O, a nice
/// (rooted, typed, empty root and leaves) form with one introduce-edge
/// node per graph edge, and an expansion that re-hosts a decomposition
/// onto the graph whose edges were replaced by subdivided parallel
/// copies.

#include <iosfwd>
#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;        // sorted vertex lists
  std::vector<std::pair<int, int>> links;    // tree edges between bags

  int width() const;  // max bag size - 1; -1 when there are no bags

  // Checks the three decomposition axioms against g; throws
  // invariant_violation on the first failure.
  void validate(const WeightedGraph& g) const;
};

// Elimination-order heuristic: repeatedly removes the vertex needing the
// fewest fill edges (ties: smaller degree, then smaller id).
TreeDecomposition min_fill_decomposition(const WeightedGraph& g);

// PACE format: "s td <bags> <width+1> <n>", "b <id> <vertices...>", then
// one "<i> <j>" line per tree edge; ids are 1-based on disk.
TreeDecomposition read_pace_td(std::istream& in);
void write_pace_td(std::ostream& out, const TreeDecomposition& td,
                   int vertex_count);

enum class NiceKind {
  kLeaf,
  kIntroduceVertex,
  kIntroduceEdge,
  kForget,
  kJoin,
};

struct NiceNode {
  NiceKind kind = NiceKind::kLeaf;
  std::vector<int> bag;  // sorted
  int vertex = -1;       // for introduce-vertex / forget
  int edge = -1;         // graph edge id for introduce-edge
  int left = -1;         // child; the only one except under join
  int right = -1;        // second join child
};

struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const;
  // Children-before-parents traversal order.
  std::vector<int> topo_order() const;
  // Structural checks plus: every graph edge introduced exactly once at
  // a node whose bag holds both endpoints.  Throws invariant_violation.
  void validate(const WeightedGraph& g) const;
};

// Converts a valid decomposition of g into nice form.  The root and all
// leaves carry empty bags; every edge of g gets one introduce-edge node
// placed where its earlier-forgotten endpoint is still in the bag.
NiceTreeDecomposition make_nice(const TreeDecomposition& td,
                                const WeightedGraph& g);

// Decomposition for the graph that replaces every edge e = {u, v} of
// `base` with `copies` two-edge paths through fresh midpoints numbered
// base.vertex_count() + e * copies + c: each midpoint hangs in its own
// {u, v, midpoint} bag.  Width becomes max(width, 2).
TreeDecomposition expand_td(const TreeDecomposition& td,
                            const WeightedGraph& base, int copies);

}  // namespace sforge
