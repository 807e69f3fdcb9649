#include "sforge/subset_spanner.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sforge/errors.hpp"
#include "sforge/graph_io.hpp"
#include "sforge/ledger.hpp"
#include "sforge/metric.hpp"
#include "sforge/mst.hpp"
#include "sforge/report.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/steiner.hpp"

namespace sforge {

SubsetSpannerResult build_subset_spanner(const WeightedGraph& g,
                                         const std::vector<int>& terminals,
                                         const SpannerOracle& oracle,
                                         const SubsetSpannerOptions& opt) {
  if (!(opt.epsilon > 0.0 && opt.epsilon < 1.0))
    throw input_error("epsilon must lie in (0, 1)");
  if (!(opt.g > 0.0) || !(opt.credit_scale > 0.0))
    throw input_error("cluster parameters must be positive");
  if (oracle.host().vertex_count() != g.vertex_count())
    throw input_error("oracle must be hosted on the builder's graph");
  std::vector<int> ts = normalize_terminals(g, terminals);

  SubsetSpannerResult res;
  const double gg = opt.g;
  const double stretch_const = 16.0 * gg + 1.0;
  const double eps = opt.rescale ? opt.epsilon / stretch_const : opt.epsilon;
  res.epsilon_applied = eps;
  // The cluster diameter budget only holds up to 1/g; the per-level
  // audit and repairs cover the slack inside that range, not beyond it.
  if (!leq_tol(eps, 1.0 / gg))
    throw input_error("epsilon after rescale must be at most 1/g");
  if (ts.size() < 2) {
    res.credit_conserved = true;
    return res;
  }

  TerminalMetric metric = metric_completion(g, ts);
  const int k = metric.size();

  auto pairs = metric_mst_pairs(metric);
  double wmst = 0.0;
  for (auto [a, b] : pairs) wmst += metric.dist(a, b);
  if (!(wmst > 0.0))
    throw invariant_violation("terminal metric has no positive spread");

  auto buy_pair = [&](int a, int b) {
    for (int id : metric.kappa_edges(a, b)) res.spanner.add(id);
  };
  // Base spanner: shortest-path image of the metric MST, then every pair
  // cheap enough to take outright.
  for (auto [a, b] : pairs) buy_pair(a, b);
  EdgeBuckets buckets = bucket_metric_edges(metric, wmst, eps);
  for (const auto& me : buckets.cheap) buy_pair(me.a, me.b);
  res.w0 = buckets.w0;

  // Calibrate the credit rate against the oracle's observed sparsity.
  {
    std::vector<int> gts;
    gts.reserve(k);
    for (int i = 0; i < k; ++i) gts.push_back(metric.terminal(i));
    std::vector<OracleQuery> batch;
    const double kk = static_cast<double>(k);
    for (double scale : {wmst / (kk * kk), wmst / kk, wmst}) {
      OracleQuery q;
      q.terminals = gts;
      q.ell = scale;
      q.epsilon = eps;
      batch.push_back(std::move(q));
    }
    OracleStats stats = measure_sparsity(oracle, batch);
    res.ws_estimate = std::max(1.0, stats.weak_ratio);
    res.oracle_calls += static_cast<int>(batch.size());
  }
  res.credit_rate =
      opt.credit_scale *
      std::max(res.ws_estimate / (eps * eps), gg / (eps * eps * eps));

  CreditLedger ledger;
  const int reserve = ledger.open_account("reserve");
  {
    double fl = 0.0;
    for (int j = 1; j <= buckets.classes; ++j)
      for (int i = 1; i <= buckets.top_level(j); ++i)
        fl += buckets.level_scale(j, i);
    fl *= 16.0 * gg * gg / (eps * eps);
    if (fl > 0.0) ledger.mint(reserve, credit_from(fl), "reserve float");
  }

  ClusterOptions copt;
  copt.epsilon = eps;
  copt.g = gg;
  copt.credit_rate = res.credit_rate;
  copt.check_invariants = opt.check_invariants;
  for (int j = 1; j <= buckets.classes; ++j) {
    auto level_reports = run_hierarchy(g, metric, buckets, j, oracle, ledger,
                                       reserve, res.spanner, copt);
    for (auto& r : level_reports) {
      res.oracle_calls += r.oracle_calls;
      res.guard_edges += r.guard_edges;
      res.steal_events += r.steal_events;
      res.reserve_topups += r.reserve_topups;
      res.per_level.push_back(std::move(r));
    }
  }
  res.levels = static_cast<int>(res.per_level.size());

  // Full stretch audit over the materialized result.
  WeightedGraph sp = res.spanner.materialize(g);
  const double budget = 1.0 + stretch_const * eps;
  for (int i = 0; i < k; ++i) {
    ShortestPathTree tr = dijkstra(sp, metric.terminal(i));
    for (int j2 = i + 1; j2 < k; ++j2) {
      double ds = tr.dist[metric.terminal(j2)];
      double dg = metric.dist(i, j2);
      if (!std::isfinite(ds))
        throw invariant_violation("terminal pair disconnected in the spanner");
      res.max_stretch = std::max(res.max_stretch, ds / dg);
      if (opt.check_invariants && !leq_tol(ds, budget * dg))
        throw invariant_violation("terminal pair exceeds the stretch budget");
    }
  }

  Subgraph base = steiner_2approx(g, ts);
  const double denom = base.weight(g);
  res.lightness = denom > 0.0 ? res.spanner.weight(g) / denom : 0.0;

  res.credit_minted = credit_to_double(ledger.minted_total());
  res.credit_spent = credit_to_double(ledger.spent_total());
  res.credit_residual = credit_to_double(ledger.residual_total());
  res.credit_conserved = ledger.conserved();
  if (opt.check_invariants && !res.credit_conserved)
    throw invariant_violation("credit ledger does not balance");
  if (opt.check_invariants && !ledger.all_nonnegative())
    throw invariant_violation("credit account went negative");
  return res;
}

std::string SubsetSpannerResult::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["lightness"] = round9(lightness);
  j["max_stretch"] = round9(max_stretch);
  j["oracle_calls"] = oracle_calls;
  j["levels"] = levels;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : per_level) {
    nlohmann::json lvl;
    lvl["class"] = r.class_j;
    lvl["level"] = r.level;
    lvl["edges_bought"] = round9(r.edges_bought);
    lvl["clusters_by_phase"] = {r.clusters_phase1, r.clusters_phase2,
                                r.clusters_phase3, r.clusters_phase4};
    lvl["ledger_residual"] = round9(r.ledger_residual);
    arr.push_back(std::move(lvl));
  }
  j["per_level"] = std::move(arr);
  j["epsilon_applied"] = round9(epsilon_applied);
  j["w0"] = round9(w0);
  j["credit_rate"] = round9(credit_rate);
  j["ws_estimate"] = round9(ws_estimate);
  j["guard_edges"] = guard_edges;
  j["steal_events"] = steal_events;
  j["reserve_topups"] = reserve_topups;
  j["credit_minted"] = round9(credit_minted);
  j["credit_spent"] = round9(credit_spent);
  j["credit_residual"] = round9(credit_residual);
  j["credit_conserved"] = credit_conserved;
  j["spanner_edges"] = spanner.size();
  return j.dump(2);
}

ComponentSpannerOracle::ComponentSpannerOracle(
    const WeightedGraph& g, std::shared_ptr<const SpannerOracle> inner,
    SubsetSpannerOptions opt)
    : g_(&g), inner_(std::move(inner)), opt_(opt) {
  if (!inner_) throw input_error("component oracle needs an inner oracle");
  if (inner_->host().vertex_count() != g.vertex_count())
    throw input_error("inner oracle must share the host graph");
  opt_.rescale = true;  // query epsilon is the end-to-end stretch
}

std::string ComponentSpannerOracle::name() const {
  return "component(" + inner_->name() + ")";
}

Subgraph ComponentSpannerOracle::query(const OracleQuery& q) const {
  validate_query(q, g_->vertex_count());
  last_max_lightness_ = 0.0;
  std::vector<int> ts = normalize_terminals(*g_, q.terminals);
  Subgraph out;
  if (ts.size() < 2) return out;

  TerminalMetric metric = metric_completion(*g_, ts);
  const int k = metric.size();
  auto pairs = metric_mst_pairs(metric);

  // Components of the metric MST restricted to edges within the scale.
  DisjointSets dsu(k);
  for (auto [a, b] : pairs)
    if (leq_tol(metric.dist(a, b), q.ell)) dsu.unite(a, b);
  std::vector<std::vector<int>> groups(k);
  for (int i = 0; i < k; ++i) groups[dsu.find(i)].push_back(i);

  SubsetSpannerOptions sub_opt = opt_;
  sub_opt.epsilon = q.epsilon;
  sub_opt.rescale = true;
  for (const auto& grp : groups) {
    if (grp.size() < 2) continue;
    double mst_c = 0.0;
    for (auto [a, b] : pairs)
      if (dsu.find(a) == dsu.find(grp[0]) && leq_tol(metric.dist(a, b), q.ell))
        mst_c += metric.dist(a, b);
    std::vector<int> comp_terms;
    comp_terms.reserve(grp.size());
    for (int i : grp) comp_terms.push_back(metric.terminal(i));
    SubsetSpannerResult r =
        build_subset_spanner(*g_, comp_terms, *inner_, sub_opt);
    out = subgraph_union(out, r.spanner);
    if (mst_c > 0.0)
      last_max_lightness_ = std::max(
          last_max_lightness_, r.spanner.weight(*g_) / mst_c);
  }
  // The scale window tops out at 2*ell, so heavier edges can never be
  // needed by an in-window pair.
  return drop_edges_over(*g_, out, 2.0 * q.ell);
}

}  // namespace sforge
