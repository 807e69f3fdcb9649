#include "sforge/doubling_oracle.hpp"

#include <utility>

#include "sforge/errors.hpp"

namespace sforge {

NetBandOracle::NetBandOracle(PointSet ps, std::string name)
    : points_(std::move(ps)),
      host_(complete_graph(points_)),
      name_(std::move(name)) {}

std::vector<int> NetBandOracle::net_for(const OracleQuery& q) const {
  validate_query(q, host_.vertex_count());
  return r_net(points_, q.terminals, q.epsilon * q.ell / 96.0);
}

Subgraph NetBandOracle::query(const OracleQuery& q) const {
  validate_query(q, host_.vertex_count());
  std::vector<int> net = net_for(q);
  std::vector<bool> in_net(static_cast<size_t>(host_.vertex_count()), false);
  for (int p : net) in_net[static_cast<size_t>(p)] = true;

  Subgraph out;
  for (size_t a = 0; a < net.size(); ++a)
    for (size_t b = a + 1; b < net.size(); ++b) {
      double d = points_.dist(net[a], net[b]);
      if (d >= q.ell / 16.0 && d <= 2.0 * q.ell) {
        int id = host_.find_edge(net[a], net[b]);
        if (id >= 0) out.add(id);
      }
    }
  for (int t : q.terminals) {
    if (in_net[static_cast<size_t>(t)]) continue;
    int best = -1;
    double best_d = 0.0;
    for (int p : net) {
      double d = points_.dist(t, p);
      if (best < 0 || d < best_d || (d == best_d && p < best)) {
        best = p;
        best_d = d;
      }
    }
    if (best >= 0 && best_d > 0.0) {
      int id = host_.find_edge(t, best);
      if (id >= 0) out.add(id);
    }
  }
  return out;
}

NetBandOracle make_doubling_oracle(PointSet ps) {
  return NetBandOracle(std::move(ps), "doubling");
}

NetBandOracle make_correlation_oracle(PointSet ps) {
  return NetBandOracle(std::move(ps), "correlation");
}

}  // namespace sforge
