#include "sforge/graph_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sforge/report.hpp"

namespace sforge {

using nlohmann::json;

GraphInstance read_graph_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error(std::string("graph JSON parse failure: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw input_error("graph JSON needs \"vertices\" and \"edges\" fields");
  GraphInstance inst;
  int n = 0;
  try {
    n = j.at("vertices").get<int>();
  } catch (const json::exception&) {
    throw input_error("graph JSON \"vertices\" must be an integer");
  }
  inst.graph = WeightedGraph(n);
  if (!j.at("edges").is_array())
    throw input_error("graph JSON \"edges\" must be an array of [u,v,w]");
  for (const auto& row : j.at("edges")) {
    if (!row.is_array() || row.size() != 3)
      throw input_error("graph JSON edge rows must be [u,v,w] triples");
    inst.graph.add_edge(row[0].get<int>(), row[1].get<int>(),
                        row[2].get<double>());
  }
  if (j.contains("terminals")) {
    for (const auto& t : j.at("terminals"))
      inst.terminals.push_back(t.get<int>());
    inst.terminals = normalize_terminals(inst.graph, inst.terminals);
  }
  return inst;
}

GraphInstance read_graph_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open graph file: " + path);
  return read_graph_json(in);
}

void write_graph_json(std::ostream& out, const WeightedGraph& g,
                      const std::vector<int>& terminals) {
  json j;
  j["vertices"] = g.vertex_count();
  json edges = json::array();
  for (const Edge& e : g.edges())
    edges.push_back(json::array({e.u, e.v, round9(e.w)}));
  j["edges"] = std::move(edges);
  j["terminals"] = terminals;
  out << j.dump(2) << "\n";
}

GraphInstance read_edge_list(std::istream& in) {
  std::vector<std::array<double, 3>> rows;
  int maxv = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int u, v;
    double w;
    if (!(ls >> u >> v >> w))
      throw input_error("edge list line " + std::to_string(lineno) +
                        " is not \"u v w\"");
    rows.push_back({static_cast<double>(u), static_cast<double>(v), w});
    maxv = std::max(maxv, std::max(u, v));
  }
  GraphInstance inst;
  inst.graph = WeightedGraph(maxv + 1);
  for (const auto& r : rows)
    inst.graph.add_edge(static_cast<int>(r[0]), static_cast<int>(r[1]), r[2]);
  return inst;
}

void write_dot(std::ostream& out, const WeightedGraph& g,
               const std::vector<int>& terminals) {
  out << "graph G {\n";
  for (int t : terminals)
    out << "  " << t << " [shape=box];\n";
  char buf[64];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%.9f", e.w);
    out << "  " << e.u << " -- " << e.v << " [label=\"" << buf << "\"];\n";
  }
  out << "}\n";
}

std::vector<int> normalize_terminals(const WeightedGraph& g,
                                     const std::vector<int>& terminals) {
  std::vector<int> t = terminals;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  for (int v : t)
    if (v < 0 || v >= g.vertex_count())
      throw input_error("terminal id " + std::to_string(v) + " out of range");
  return t;
}

}  // namespace sforge
