#include "sforge/ptp_spanner.hpp"

#include <algorithm>

#include "sforge/errors.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/ss_spanner.hpp"

namespace sforge {

namespace {

double path_weight_checked(const WeightedGraph& g, const std::vector<int>& p,
                           std::vector<int>* edge_ids = nullptr) {
  double w = 0.0;
  for (size_t i = 1; i < p.size(); ++i) {
    int id = g.find_edge(p[i - 1], p[i]);
    if (id < 0)
      throw input_error("demand edge " + std::to_string(p[i - 1]) + "-" +
                        std::to_string(p[i]) + " missing");
    w += g.edge(id).w;
    if (edge_ids) edge_ids->push_back(id);
  }
  return w;
}

}  // namespace

Subgraph ptp_single(const WeightedGraph& g, const std::vector<int>& base_path,
                    const std::vector<std::vector<int>>& demand_paths,
                    double ell, double epsilon) {
  if (!(ell > 0.0)) throw input_error("ptp_single needs ell > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw input_error("ptp_single needs epsilon in (0,1)");
  Subgraph out;
  if (demand_paths.empty()) return out;

  std::vector<bool> on_base(static_cast<size_t>(g.vertex_count()), false);
  for (int v : base_path) {
    if (v < 0 || v >= g.vertex_count())
      throw input_error("base path vertex out of range");
    on_base[static_cast<size_t>(v)] = true;
  }
  verify_shortest_path(g, base_path);

  std::vector<int> endpoints;
  for (size_t d = 0; d < demand_paths.size(); ++d) {
    const auto& q = demand_paths[d];
    if (q.empty()) throw input_error("empty demand path");
    double w = path_weight_checked(g, q);
    if (!leq_tol(w, ell, kRelTol))
      throw input_error("demand " + std::to_string(d) +
                        " heavier than the scale");
    bool crosses = false;
    for (int v : q)
      if (on_base[static_cast<size_t>(v)]) {
        crosses = true;
        break;
      }
    if (!crosses)
      throw input_error("demand " + std::to_string(d) +
                        " does not touch the base path");
    endpoints.push_back(q.front());
    endpoints.push_back(q.back());
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()),
                  endpoints.end());

  // Working graph: edges <= ell plus the base path itself.
  Subgraph allowed;
  for (int id = 0; id < g.edge_count(); ++id)
    if (leq_tol(g.edge(id).w, ell, kRelTol)) allowed.add(id);
  std::vector<int> base_edge_ids;
  for (size_t i = 1; i < base_path.size(); ++i) {
    int id = g.find_edge(base_path[i - 1], base_path[i]);
    base_edge_ids.push_back(id);
    allowed.add(id);
  }
  std::vector<int> edge_map;
  WeightedGraph work = allowed.materialize(g, &edge_map);

  for (int x : endpoints) {
    AnchoredPathSet aps = ss_spanner(work, base_path, x, epsilon);
    if (!leq_tol(aps.R, ell, kRelTol))
      throw invariant_violation(
          "demand endpoint farther than the scale from the base path");
    for (const auto& p : aps.paths)
      for (int wid : p) out.add(edge_map[static_cast<size_t>(wid)]);

    // Retained base subpath: every base vertex within path distance
    // 4/eps * ell of the closest-vertex anchor.
    double y0_off =
        aps.prefix[static_cast<size_t>(aps.anchor_pos[static_cast<size_t>(aps.y0_slot)])];
    double radius = 4.0 * ell / epsilon;
    int first = -1, last = -1;
    for (size_t i = 0; i < aps.base_path.size(); ++i) {
      if (leq_tol(std::abs(aps.prefix[i] - y0_off), radius, kRelTol)) {
        if (first < 0) first = static_cast<int>(i);
        last = static_cast<int>(i);
      }
    }
    // aps.base_path may be the reverse of base_path; positions map
    // accordingly onto base_edge_ids.
    bool reversed = aps.base_path.front() != base_path.front() &&
                    base_path.size() >= 2;
    for (int i = first; i < last; ++i) {
      int pos = reversed ? static_cast<int>(base_path.size()) - 2 - i : i;
      out.add(base_edge_ids[static_cast<size_t>(pos)]);
    }
  }
  return out;
}

Subgraph ptp_spanner(const WeightedGraph& g,
                     const std::vector<std::vector<int>>& base_paths,
                     const std::vector<std::vector<int>>& demand_paths,
                     double ell, double epsilon) {
  if (base_paths.empty()) throw input_error("ptp_spanner needs base paths");
  std::vector<std::vector<bool>> on_base(base_paths.size());
  for (size_t j = 0; j < base_paths.size(); ++j) {
    on_base[j].assign(static_cast<size_t>(g.vertex_count()), false);
    for (int v : base_paths[j]) {
      if (v < 0 || v >= g.vertex_count())
        throw input_error("base path vertex out of range");
      on_base[j][static_cast<size_t>(v)] = true;
    }
  }
  std::vector<std::vector<std::vector<int>>> groups(base_paths.size());
  for (size_t d = 0; d < demand_paths.size(); ++d) {
    int match = -1;
    for (size_t j = 0; j < base_paths.size() && match < 0; ++j)
      for (int v : demand_paths[d])
        if (on_base[j][static_cast<size_t>(v)]) {
          match = static_cast<int>(j);
          break;
        }
    if (match < 0)
      throw input_error("demand " + std::to_string(d) +
                        " crosses no base path");
    groups[static_cast<size_t>(match)].push_back(demand_paths[d]);
  }
  Subgraph out;
  for (size_t j = 0; j < base_paths.size(); ++j)
    if (!groups[j].empty())
      out = subgraph_union(
          out, ptp_single(g, base_paths[j], groups[j], ell, epsilon));
  return out;
}

}  // namespace sforge
