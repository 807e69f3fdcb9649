#pragma once

#include <vector>

#include "sforge/graph.hpp"

namespace sforge {

// Metric-closure 2-approximation of a minimum Steiner tree: MST of the
// terminal metric completion, mapped back through witness paths, re-MST'd
// inside the union, then non-terminal leaves pruned. Result is a tree
// containing every terminal; weight <= 2x optimum.
Subgraph steiner_2approx(const WeightedGraph& g,
                         const std::vector<int>& terminals);

// Exact minimum Steiner tree weight by Dreyfus-Wagner over the shortest
// path metric. Exponential in |terminals|; intended for small terminal
// sets (reference values, lightness denominators).
double steiner_exact_weight(const WeightedGraph& g,
                            const std::vector<int>& terminals,
                            int max_terminals = 12);

}  // namespace sforge
