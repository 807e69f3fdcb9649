#pragma once

#include <memory>
#include <string>

#include "sforge/oracle.hpp"

namespace sforge {

// Supplies a compressed graph over the host's vertex ids: it must
// contain every requested terminal, every edge (u,v,w) must satisfy
// w >= d_host(u,v) (each edge abstracts a host path), and terminal
// distances in it must be within the advertised stretch of host
// distances. The oracle validates the first two; the third is the
// provider's contract.
class MinorProvider {
 public:
  virtual ~MinorProvider() = default;
  virtual std::string name() const = 0;
  virtual WeightedGraph compress(const std::vector<int>& terminals) const = 0;
};

// Exact provider for tree hosts: the minimal subtree spanning the
// terminals, with every degree-2 non-terminal spliced out. Distances are
// preserved exactly; at most |terminals| - 2 branching vertices remain.
class TreeMinorProvider : public MinorProvider {
 public:
  explicit TreeMinorProvider(const WeightedGraph& tree);

  std::string name() const override { return "tree"; }
  WeightedGraph compress(const std::vector<int>& terminals) const override;

 private:
  const WeightedGraph* tree_;
};

// Deletes compressed edges of length >= 2*ell, then replaces each
// survivor by a shortest path of the host (decompression).
class MinorOracle : public SpannerOracle {
 public:
  MinorOracle(const WeightedGraph& host,
              std::shared_ptr<const MinorProvider> provider);

  std::string name() const override { return "minor-" + provider_->name(); }
  const WeightedGraph& host() const override { return *host_; }
  Subgraph query(const OracleQuery& q) const override;

 private:
  const WeightedGraph* host_;
  std::shared_ptr<const MinorProvider> provider_;
};

}  // namespace sforge
