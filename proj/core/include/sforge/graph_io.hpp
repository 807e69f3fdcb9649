#pragma once

#include <iosfwd>
#include <string>

#include "sforge/graph.hpp"

namespace sforge {

/// Graph JSON format:
///   {"vertices": N, "edges": [[u, v, w], ...], "terminals": [t0, t1, ...]}
/// "terminals" may be absent (empty terminal set).
GraphInstance read_graph_json(std::istream& in);
GraphInstance read_graph_json_file(const std::string& path);
void write_graph_json(std::ostream& out, const WeightedGraph& g,
                      const std::vector<int>& terminals);

/// Plain edge list, one "u v w" triple per line.  Lines starting with '#'
/// are skipped.  Vertex count is 1 + max id seen.
GraphInstance read_edge_list(std::istream& in);

/// Graphviz export.  Terminals are drawn as boxes.
void write_dot(std::ostream& out, const WeightedGraph& g,
               const std::vector<int>& terminals);

/// Checks terminal ids against the graph and returns them sorted and
/// deduplicated.  Throws input_error on out-of-range ids.
std::vector<int> normalize_terminals(const WeightedGraph& g,
                                     const std::vector<int>& terminals);

}  // namespace sforge
