#include "sforge/oracle.hpp"

#include <algorithm>
#include <memory>

#include "sforge/errors.hpp"
#include "sforge/parallel.hpp"
#include "sforge/shortest_paths.hpp"

namespace sforge {

void validate_query(const OracleQuery& q, int universe) {
  if (!(q.ell > 0.0)) throw input_error("oracle query needs ell > 0");
  if (!(q.epsilon > 0.0 && q.epsilon < 1.0))
    throw input_error("oracle query needs epsilon in (0,1)");
  if (q.terminals.empty()) throw input_error("oracle query needs terminals");
  std::vector<int> seen = q.terminals;
  std::sort(seen.begin(), seen.end());
  for (size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] < 0 || seen[i] >= universe)
      throw input_error("oracle terminal out of range");
    if (i > 0 && seen[i] == seen[i - 1])
      throw input_error("oracle terminals contain a duplicate");
  }
}

OracleStats oracle_stats(const WeightedGraph& host, const Subgraph& out,
                         const OracleQuery& q) {
  OracleStats s;
  s.terminal_count = static_cast<int>(q.terminals.size());
  s.edge_count = static_cast<int>(out.edge_ids.size());
  for (int id : out.edge_ids) {
    double w = host.edge(id).w;
    s.weight += w;
    if (w > s.max_edge_len) s.max_edge_len = w;
  }
  double denom = static_cast<double>(s.terminal_count) * q.ell;
  s.weak_ratio = denom > 0.0 ? s.weight / denom : 0.0;
  s.strong_ratio = s.terminal_count > 0
                       ? static_cast<double>(s.edge_count) / s.terminal_count
                       : 0.0;
  return s;
}

OracleStats measure_sparsity(const SpannerOracle& oracle,
                             const std::vector<OracleQuery>& batch) {
  if (batch.empty()) throw input_error("measure_sparsity needs a batch");
  std::vector<OracleStats> per(batch.size());
  parallel_for(static_cast<int>(batch.size()), [&](int i) {
    const OracleQuery& q = batch[static_cast<size_t>(i)];
    Subgraph out = oracle.query(q);
    per[static_cast<size_t>(i)] = oracle_stats(oracle.host(), out, q);
  });
  OracleStats agg;
  for (const OracleStats& s : per) {
    agg.weight = std::max(agg.weight, s.weight);
    agg.edge_count = std::max(agg.edge_count, s.edge_count);
    agg.terminal_count = std::max(agg.terminal_count, s.terminal_count);
    agg.weak_ratio = std::max(agg.weak_ratio, s.weak_ratio);
    agg.strong_ratio = std::max(agg.strong_ratio, s.strong_ratio);
    agg.max_edge_len = std::max(agg.max_edge_len, s.max_edge_len);
  }
  return agg;
}

Subgraph drop_edges_over(const WeightedGraph& host, const Subgraph& sub,
                         double maxlen) {
  Subgraph out;
  for (int id : sub.edge_ids)
    if (host.edge(id).w <= maxlen) out.add(id);
  return out;
}

GraphAdaptedOracle::GraphAdaptedOracle(
    const WeightedGraph& target, std::shared_ptr<const SpannerOracle> inner)
    : target_(&target), inner_(std::move(inner)) {
  if (inner_->host().vertex_count() != target_->vertex_count())
    throw input_error("adapted oracle: vertex count mismatch");
}

std::string GraphAdaptedOracle::name() const {
  return inner_->name() + "-on-graph";
}

Subgraph GraphAdaptedOracle::query(const OracleQuery& q) const {
  Subgraph inner_out = inner_->query(q);
  const WeightedGraph& ih = inner_->host();
  Subgraph out;
  std::vector<int> need_path;
  for (int id : inner_out.edge_ids) {
    const Edge& e = ih.edge(id);
    int tid = target_->find_edge(e.u, e.v);
    if (tid >= 0 && leq_tol(target_->edge(tid).w, e.w, kRelTol))
      out.add(tid);
    else
      need_path.push_back(id);
  }
  if (!need_path.empty()) {
    std::vector<std::unique_ptr<ShortestPathTree>> cache(
        static_cast<size_t>(target_->vertex_count()));
    for (int id : need_path) {
      const Edge& e = ih.edge(id);
      int src = std::min(e.u, e.v);
      int dst = std::max(e.u, e.v);
      auto& spt = cache[static_cast<size_t>(src)];
      if (!spt) spt = std::make_unique<ShortestPathTree>(dijkstra(*target_, src));
      if (!spt->reached(dst))
        throw contract_violation("adapted oracle: endpoints disconnected in target");
      out.add_all(spt->path_edges_to(dst));
    }
  }
  return out;
}

}  // namespace sforge
