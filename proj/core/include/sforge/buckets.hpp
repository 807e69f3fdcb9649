#pragma once

/// \file buckets.hpp
/// Weight-class partition of the terminal metric edges.  Pairs cheaper
/// than w0/eps are handled directly; the rest land in geometric buckets
/// (scale/2, scale] with scale = 2^j * w0 * eps^-i, one bucket per pair.

#include <vector>

#include "sforge/metric.hpp"

namespace sforge {

struct MetricEdge {
  int a = 0;  // metric index, a < b
  int b = 0;
  double w = 0.0;
};

struct EdgeBuckets {
  double w0 = 0.0;       // w(MST of the metric) / k^2
  double epsilon = 0.0;
  int classes = 0;       // J = ceil(log2(1/eps)); class index j is 1-based
  std::vector<MetricEdge> cheap;  // weight <= w0/eps
  // per_class[j-1][i-1] = bucket (j, i); inner vectors may be empty
  std::vector<std::vector<std::vector<MetricEdge>>> per_class;

  // 2^j * w0 * eps^-i; level 0 gives the base clustering scale 2^j * w0.
  double level_scale(int j, int i) const;
  // Highest level with a non-empty bucket in class j, 0 when none.
  int top_level(int j) const;
  int heavy_count() const;
};

// Buckets every pair of the metric.  mst_weight is w(MST of the metric)
// and must cover every pair weight (throws invariant_violation when a
// pair cannot be placed, or when a placed pair misses its half-open
// weight window).
EdgeBuckets bucket_metric_edges(const TerminalMetric& metric,
                                double mst_weight, double epsilon);

}  // namespace sforge
