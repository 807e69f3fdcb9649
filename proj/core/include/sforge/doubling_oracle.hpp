#pragma once

#include <string>

#include "sforge/oracle.hpp"
#include "sforge/points.hpp"

namespace sforge {

// Net-and-band oracle over a point set: take an (epsilon*ell/96)-net N
// of the queried terminals, connect net pairs at distance in
// [ell/16, 2*ell], and attach every non-net terminal to its nearest net
// point. The same construction serves metrics of bounded doubling
// dimension and bounded correlation dimension; only the sparsity
// analysis differs, so the two entry points share this class.
class NetBandOracle : public SpannerOracle {
 public:
  NetBandOracle(PointSet ps, std::string name);

  std::string name() const override { return name_; }
  const WeightedGraph& host() const override { return host_; }
  Subgraph query(const OracleQuery& q) const override;
  const PointSet& points() const { return points_; }

  // The net the last construction would use (stateless helper for tests).
  std::vector<int> net_for(const OracleQuery& q) const;

 private:
  PointSet points_;
  WeightedGraph host_;
  std::string name_;
};

NetBandOracle make_doubling_oracle(PointSet ps);
NetBandOracle make_correlation_oracle(PointSet ps);

}  // namespace sforge
