// spanner-forge: command line front end for the spanner library.
//
// Subcommands: gen, spanner, oracle, tsp, ptas, verify.  Every command
// emits a JSON report (schema 1, doubles rounded to nine decimals) to
// stdout or --out.  Exit codes: 0 success, 1 verification failure,
// 2 usage error (bad flags, malformed files, invalid parameters).

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sforge/doubling_oracle.hpp"
#include "sforge/ell_close.hpp"
#include "sforge/errors.hpp"
#include "sforge/euclidean_oracle.hpp"
#include "sforge/graph.hpp"
#include "sforge/graph_io.hpp"
#include "sforge/instances.hpp"
#include "sforge/minor_oracle.hpp"
#include "sforge/oracle.hpp"
#include "sforge/points.hpp"
#include "sforge/ptas.hpp"
#include "sforge/report.hpp"
#include "sforge/separator.hpp"
#include "sforge/shortest_paths.hpp"
#include "sforge/steiner.hpp"
#include "sforge/subset_spanner.hpp"
#include "sforge/subset_tsp.hpp"
#include "sforge/tree_decomposition.hpp"
#include "sforge/verify.hpp"

namespace {

using nlohmann::json;
using namespace sforge;

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw input_error("cannot open output file: " + out_path);
  f << text << "\n";
}

GraphInstance load_graph(const std::string& path) {
  return read_graph_json_file(path);
}

// Full shortest-path metric of a connected graph, as a point set.  The
// upper triangle is mirrored so the matrix is exactly symmetric despite
// last-ulp differences between opposite dijkstra runs.
PointSet metric_points(const WeightedGraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<double>> d(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    auto t = dijkstra(g, s);
    for (double x : t.dist)
      if (x >= kInf)
        throw input_error("metric oracles need a connected graph");
    d[static_cast<size_t>(s)] = t.dist;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          d[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return points_from_matrix(std::move(d));
}

std::shared_ptr<const SpannerOracle> make_oracle(const std::string& name,
                                                 const WeightedGraph& g,
                                                 const std::string& provider) {
  if (name == "euclidean") {
    auto inner = std::make_shared<EuclideanOracle>(metric_points(g));
    return std::make_shared<GraphAdaptedOracle>(g, inner);
  }
  if (name == "doubling") {
    auto inner =
        std::make_shared<NetBandOracle>(make_doubling_oracle(metric_points(g)));
    return std::make_shared<GraphAdaptedOracle>(g, inner);
  }
  if (name == "correlation") {
    auto inner = std::make_shared<NetBandOracle>(
        make_correlation_oracle(metric_points(g)));
    return std::make_shared<GraphAdaptedOracle>(g, inner);
  }
  if (name == "minor")
    return std::make_shared<MinorOracle>(g,
                                         std::make_shared<TreeMinorProvider>(g));
  if (name == "separator") {
    std::shared_ptr<const SeparatorProvider> p;
    if (provider == "centroid")
      p = std::make_shared<TreeCentroidProvider>();
    else if (provider == "spt-cycle")
      p = std::make_shared<SptCycleProvider>();
    else
      throw input_error("unknown separator provider: " + provider);
    return std::make_shared<SeparatorOracle>(g, p);
  }
  throw input_error("unknown oracle: " + name);
}

// Writes a generated instance in the requested format and returns the
// serialized bytes (for the determinism contract, the bytes written to
// --out and to stdout are identical).
std::string render_instance(const GeneratedInstance& inst,
                            const std::string& family,
                            const std::string& format) {
  std::ostringstream os;
  if (!inst.is_points) {
    if (format == "json") {
      write_graph_json(os, inst.graph.graph, inst.graph.terminals);
    } else if (format == "dot") {
      write_dot(os, inst.graph.graph, inst.graph.terminals);
    } else {
      throw input_error("graph family " + family +
                        " supports --format json or dot");
    }
    return os.str();
  }
  if (format == "csv") {
    os << "# terminals:";
    for (int t : inst.terminals) os << " " << t;
    os << "\n";
    write_points_csv(os, inst.points);
  } else if (format == "json") {
    write_metric_json(os, inst.points);
  } else {
    throw input_error("point family " + family +
                      " supports --format csv or json");
  }
  return os.str();
}

json stats_json(const OracleStats& st) {
  json j;
  j["terminal_count"] = st.terminal_count;
  j["edge_count"] = st.edge_count;
  j["weight"] = round9(st.weight);
  j["weak_ratio"] = round9(st.weak_ratio);
  j["strong_ratio"] = round9(st.strong_ratio);
  j["max_edge_len"] = round9(st.max_edge_len);
  return j;
}

int cmd_gen(const InstanceSpec& spec, const std::string& format,
            const std::string& out_path) {
  auto inst = generate_instance(spec);
  emit(render_instance(inst, spec.family, format), out_path);
  return kOk;
}

int cmd_spanner(const std::string& in_path, double eps,
                const std::string& oracle_name, const std::string& provider,
                double g_budget, bool no_rescale, const std::string& out_path,
                const std::string& report_path) {
  auto inst = load_graph(in_path);
  auto terms = normalize_terminals(inst.graph, inst.terminals);
  if (terms.size() < 2)
    throw input_error("spanner needs at least two terminals");
  auto oracle = make_oracle(oracle_name, inst.graph, provider);

  SubsetSpannerOptions opt;
  opt.epsilon = eps;
  opt.rescale = !no_rescale;
  opt.g = g_budget;
  auto res = build_subset_spanner(inst.graph, terms, *oracle, opt);

  if (!out_path.empty()) {
    auto sub = res.spanner.materialize(inst.graph, nullptr);
    std::ostringstream os;
    write_graph_json(os, sub, terms);
    emit(os.str(), out_path);
  }
  json j = json::parse(res.to_json());
  j["oracle"] = oracle->name();
  j["input"] = in_path;
  emit(j.dump(2), report_path);
  return kOk;
}

int cmd_oracle(const std::string& in_path, const std::string& oracle_name,
               const std::string& provider, double eps, double ell,
               const std::string& out_path) {
  auto inst = load_graph(in_path);
  auto terms = normalize_terminals(inst.graph, inst.terminals);
  if (terms.empty()) throw input_error("oracle query needs terminals");
  auto oracle = make_oracle(oracle_name, inst.graph, provider);

  OracleQuery q{terms, ell, eps};
  validate_query(q, inst.graph.vertex_count());
  auto sub = oracle->query(q);
  auto st = oracle_stats(inst.graph, sub, q);

  // Definition check: in-window pairs preserved within 1+eps, and no
  // retained edge longer than 2*ell.
  auto win = measure_stretch_window(inst.graph, sub, terms, ell / 8.0, ell);
  bool ok = win.unreachable_pairs == 0 &&
            leq_tol(win.max_stretch, 1.0 + eps) &&
            leq_tol(st.max_edge_len, 2.0 * ell);

  json j;
  j["schema"] = 1;
  j["oracle"] = oracle->name();
  j["ell"] = round9(ell);
  j["epsilon"] = round9(eps);
  j["stats"] = stats_json(st);
  j["window_pairs"] = win.pairs_checked;
  j["window_max_stretch"] = round9(win.max_stretch);
  j["window_ok"] = ok;
  emit(j.dump(2), out_path);
  return ok ? kOk : kVerifyFail;
}

int cmd_tsp(const std::string& in_path, const std::string& td_path,
            int width_cap, const std::string& out_path) {
  auto inst = load_graph(in_path);
  auto terms = normalize_terminals(inst.graph, inst.terminals);
  SubsetTspOptions opt;
  opt.width_cap = width_cap;
  TourResult res;
  if (td_path.empty()) {
    res = subset_tsp_dp(inst.graph, terms, opt);
  } else {
    std::ifstream f(td_path);
    if (!f) throw input_error("cannot open decomposition file: " + td_path);
    auto td = read_pace_td(f);
    res = subset_tsp_dp(inst.graph, terms, td, opt);
  }
  emit(res.to_json(), out_path);
  return kOk;
}

int cmd_ptas(const std::string& in_path, double eps,
             const std::string& oracle_name, const std::string& provider,
             const std::string& scheme_name, int width_cap,
             const std::string& out_path) {
  auto inst = load_graph(in_path);
  auto terms = normalize_terminals(inst.graph, inst.terminals);
  auto oracle = make_oracle(oracle_name, inst.graph, provider);

  PartitionScheme scheme;
  if (scheme_name == "bfs-layers")
    scheme = PartitionScheme::kBfsLayers;
  else if (scheme_name == "greedy-balance")
    scheme = PartitionScheme::kGreedyBalance;
  else
    throw input_error("unknown partition scheme: " + scheme_name);

  PtasOptions opt;
  opt.width_cap = width_cap;
  auto res = run_ptas(inst.graph, terms, eps, *oracle, scheme, opt);

  json j = json::parse(res.report.to_json());
  j["oracle"] = oracle->name();
  json edges = json::array();
  for (const auto& te : res.edges)
    edges.push_back(json::array({te.u, te.v, te.mult}));
  j["edges"] = edges;
  emit(j.dump(2), out_path);
  return kOk;
}

int cmd_verify(const std::string& host_path, const std::string& spanner_path,
               double eps, const std::string& out_path) {
  auto host = load_graph(host_path);
  auto span = load_graph(spanner_path);
  if (span.graph.vertex_count() != host.graph.vertex_count())
    throw input_error("host and spanner must share a vertex id space");
  auto terms = normalize_terminals(host.graph, host.terminals);
  if (terms.size() < 2)
    throw input_error("verify needs at least two terminals in the host file");

  double max_stretch = 1.0;
  int worst_u = -1, worst_v = -1;
  int unreachable = 0;
  int pairs = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    auto dh = dijkstra(host.graph, terms[i]);
    auto ds = dijkstra(span.graph, terms[i]);
    for (size_t k = i + 1; k < terms.size(); ++k) {
      int v = terms[k];
      double a = dh.dist[static_cast<size_t>(v)];
      double b = ds.dist[static_cast<size_t>(v)];
      if (a >= kInf) continue;
      ++pairs;
      if (b >= kInf) {
        ++unreachable;
        continue;
      }
      double r = a > 0 ? b / a : 1.0;
      if (r > max_stretch) {
        max_stretch = r;
        worst_u = terms[i];
        worst_v = v;
      }
    }
  }

  double w_span = 0.0;
  for (int e = 0; e < span.graph.edge_count(); ++e)
    w_span += span.graph.edge(e).w;
  auto base = steiner_2approx(host.graph, terms);
  double w_base = base.weight(host.graph);

  bool pass = unreachable == 0 &&
              (eps <= 0.0 || leq_tol(max_stretch, 1.0 + eps));

  json j;
  j["schema"] = 1;
  j["pairs_checked"] = pairs;
  j["unreachable_pairs"] = unreachable;
  j["max_stretch"] = round9(max_stretch);
  j["worst_pair"] = json::array({worst_u, worst_v});
  j["spanner_weight"] = round9(w_span);
  j["lightness"] = round9(w_base > 0 ? w_span / w_base : 0.0);
  j["bound"] = round9(eps > 0 ? 1.0 + eps : 0.0);
  j["pass"] = pass;
  emit(j.dump(2), out_path);
  return pass ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subset spanners, sparsity oracles, and tour pipelines"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // gen
  InstanceSpec spec;
  std::string gen_format = "json";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--family", spec.family,
                  "grid | random-geometric | tree | euclidean-points | "
                  "doubling-grid | path-plus-clique");
  gen->add_option("--size", spec.size, "vertex/point count");
  gen->add_option("--terminals", spec.terminals, "terminal sample size");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("--format", gen_format, "json | csv | dot")
      ->check(CLI::IsMember({"json", "csv", "dot"}));
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // common spanner/oracle/ptas flags
  std::string sp_in, sp_oracle = "separator", sp_provider = "spt-cycle";
  double sp_eps = 0.1, sp_g = 29.0;
  bool sp_no_rescale = false;
  std::string sp_out, sp_report;
  auto* sp = app.add_subcommand("spanner", "build a subset spanner");
  sp->add_option("input", sp_in, "graph JSON file")->required();
  sp->add_option("--eps", sp_eps, "target stretch 1+eps");
  sp->add_option("--oracle", sp_oracle,
                 "euclidean | doubling | correlation | minor | separator")
      ->check(CLI::IsMember(
          {"euclidean", "doubling", "correlation", "minor", "separator"}));
  sp->add_option("--provider", sp_provider, "centroid | spt-cycle")
      ->check(CLI::IsMember({"centroid", "spt-cycle"}));
  sp->add_option("--g", sp_g, "cluster diameter budget");
  sp->add_flag("--no-rescale", sp_no_rescale,
               "keep the raw 1+O(eps) stretch constant");
  sp->add_option("--out", sp_out, "write the spanner as graph JSON");
  sp->add_option("--report", sp_report, "report file (default stdout)");

  std::string oq_in, oq_oracle = "separator", oq_provider = "spt-cycle";
  double oq_eps = 0.1, oq_ell = 1.0;
  std::string oq_out;
  auto* oq = app.add_subcommand("oracle", "single oracle query plus stats");
  oq->add_option("input", oq_in, "graph JSON file")->required();
  oq->add_option("--oracle", oq_oracle,
                 "euclidean | doubling | correlation | minor | separator")
      ->check(CLI::IsMember(
          {"euclidean", "doubling", "correlation", "minor", "separator"}));
  oq->add_option("--provider", oq_provider, "centroid | spt-cycle")
      ->check(CLI::IsMember({"centroid", "spt-cycle"}));
  oq->add_option("--eps", oq_eps, "window stretch 1+eps");
  oq->add_option("--ell", oq_ell, "query scale")->required();
  oq->add_option("--out", oq_out, "report file (default stdout)");

  std::string tsp_in, tsp_td;
  bool tsp_heuristic = false;
  int tsp_cap = 12;
  std::string tsp_out;
  auto* tsp = app.add_subcommand("tsp", "exact closed walk through terminals");
  tsp->add_option("input", tsp_in, "graph JSON file")->required();
  auto* td_opt = tsp->add_option("--td", tsp_td, "tree decomposition file");
  tsp->add_flag("--heuristic-td", tsp_heuristic,
                "build the decomposition internally")
      ->excludes(td_opt);
  tsp->add_option("--width-cap", tsp_cap, "refuse wider decompositions");
  tsp->add_option("--out", tsp_out, "report file (default stdout)");

  std::string pt_in, pt_oracle = "separator", pt_provider = "spt-cycle";
  std::string pt_scheme = "bfs-layers";
  double pt_eps = 0.1;
  int pt_cap = 12;
  std::string pt_out;
  auto* pt = app.add_subcommand("ptas", "spanner + contraction + exact walk");
  pt->add_option("input", pt_in, "graph JSON file")->required();
  pt->add_option("--eps", pt_eps, "approximation parameter")->required();
  pt->add_option("--oracle", pt_oracle,
                 "euclidean | doubling | correlation | minor | separator")
      ->check(CLI::IsMember(
          {"euclidean", "doubling", "correlation", "minor", "separator"}));
  pt->add_option("--provider", pt_provider, "centroid | spt-cycle")
      ->check(CLI::IsMember({"centroid", "spt-cycle"}));
  pt->add_option("--scheme", pt_scheme, "bfs-layers | greedy-balance")
      ->check(CLI::IsMember({"bfs-layers", "greedy-balance"}));
  pt->add_option("--width-cap", pt_cap, "refuse wider contractions");
  pt->add_option("--out", pt_out, "report file (default stdout)");

  std::string vf_host, vf_span, vf_out;
  double vf_eps = 0.0;
  auto* vf = app.add_subcommand("verify", "stretch/lightness of a spanner");
  vf->add_option("host", vf_host, "host graph JSON file")->required();
  vf->add_option("spanner", vf_span, "spanner graph JSON file")->required();
  vf->add_option("--eps", vf_eps, "fail when stretch exceeds 1+eps");
  vf->add_option("--out", vf_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(spec, gen_format, gen_out);
    if (sp->parsed())
      return cmd_spanner(sp_in, sp_eps, sp_oracle, sp_provider, sp_g,
                         sp_no_rescale, sp_out, sp_report);
    if (oq->parsed())
      return cmd_oracle(oq_in, oq_oracle, oq_provider, oq_eps, oq_ell, oq_out);
    if (tsp->parsed()) return cmd_tsp(tsp_in, tsp_td, tsp_cap, tsp_out);
    if (pt->parsed())
      return cmd_ptas(pt_in, pt_eps, pt_oracle, pt_provider, pt_scheme, pt_cap,
                      pt_out);
    if (vf->parsed()) return cmd_verify(vf_host, vf_span, vf_eps, vf_out);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFail;
  }
  return kUsage;
}
