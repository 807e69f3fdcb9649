#include "sforge/metric.hpp"

#include <algorithm>

namespace sforge {

std::vector<int> TerminalMetric::kappa_vertices(int i, int j) const {
  if (i == j) return {terminal(i)};
  bool flip = i > j;
  if (flip) std::swap(i, j);
  std::vector<int> p = kv_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  if (flip) std::reverse(p.begin(), p.end());
  return p;
}

std::vector<int> TerminalMetric::kappa_edges(int i, int j) const {
  if (i == j) return {};
  bool flip = i > j;
  if (flip) std::swap(i, j);
  std::vector<int> p = ke_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  if (flip) std::reverse(p.begin(), p.end());
  return p;
}

int TerminalMetric::index_of(int vertex) const {
  if (vertex < 0 || vertex >= static_cast<int>(index_of_.size())) return -1;
  return index_of_[static_cast<size_t>(vertex)];
}

TerminalMetric metric_completion(const WeightedGraph& g,
                                 const std::vector<int>& terminals) {
  TerminalMetric m;
  m.terminals_ = terminals;
  std::sort(m.terminals_.begin(), m.terminals_.end());
  m.terminals_.erase(std::unique(m.terminals_.begin(), m.terminals_.end()),
                     m.terminals_.end());
  for (int t : m.terminals_)
    if (t < 0 || t >= g.vertex_count())
      throw input_error("terminal " + std::to_string(t) + " out of range");
  const int k = m.size();
  m.index_of_.assign(static_cast<size_t>(g.vertex_count()), -1);
  for (int i = 0; i < k; ++i)
    m.index_of_[static_cast<size_t>(m.terminals_[static_cast<size_t>(i)])] = i;

  m.dist_.assign(static_cast<size_t>(k),
                 std::vector<double>(static_cast<size_t>(k), 0.0));
  m.kv_.resize(static_cast<size_t>(k));
  m.ke_.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    m.kv_[static_cast<size_t>(i)].resize(static_cast<size_t>(k));
    m.ke_[static_cast<size_t>(i)].resize(static_cast<size_t>(k));
  }

  for (int i = 0; i < k; ++i) {
    ShortestPathTree spt = dijkstra(g, m.terminals_[static_cast<size_t>(i)]);
    for (int j = i + 1; j < k; ++j) {
      int tj = m.terminals_[static_cast<size_t>(j)];
      if (!spt.reached(tj))
        throw input_error("terminals " +
                          std::to_string(m.terminals_[static_cast<size_t>(i)]) +
                          " and " + std::to_string(tj) +
                          " are in different components");
      double d = spt.dist[static_cast<size_t>(tj)];
      m.dist_[static_cast<size_t>(i)][static_cast<size_t>(j)] = d;
      m.dist_[static_cast<size_t>(j)][static_cast<size_t>(i)] = d;
      m.kv_[static_cast<size_t>(i)][static_cast<size_t>(j)] = spt.path_to(tj);
      m.ke_[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          spt.path_edges_to(tj);
    }
  }
  return m;
}

bool check_metric_axioms(const std::vector<std::vector<double>>& d,
                         double tol) {
  const int n = static_cast<int>(d.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(d[static_cast<size_t>(i)].size()) != n) return false;
    if (d[static_cast<size_t>(i)][static_cast<size_t>(i)] != 0.0) return false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double a = d[static_cast<size_t>(i)][static_cast<size_t>(j)];
      double b = d[static_cast<size_t>(j)][static_cast<size_t>(i)];
      if (a != b) return false;
      if (!(a > 0.0)) return false;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        if (i == j || j == l || i == l) continue;
        double lhs = d[static_cast<size_t>(i)][static_cast<size_t>(j)];
        double rhs = d[static_cast<size_t>(i)][static_cast<size_t>(l)] +
                     d[static_cast<size_t>(l)][static_cast<size_t>(j)];
        if (!leq_tol(lhs, rhs, tol)) return false;
      }
  return true;
}

}  // namespace sforge
