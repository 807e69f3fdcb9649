#include "sforge/buckets.hpp"

#include <cmath>
#include <string>

#include "sforge/errors.hpp"

namespace sforge {

namespace {

double pow_int(double base, int e) {
  double r = 1.0;
  for (int t = 0; t < e; ++t) r *= base;
  return r;
}

}  // namespace

double EdgeBuckets::level_scale(int j, int i) const {
  return pow_int(2.0, j) * w0 * pow_int(1.0 / epsilon, i);
}

int EdgeBuckets::top_level(int j) const {
  const auto& levels = per_class[static_cast<size_t>(j - 1)];
  int top = 0;
  for (size_t i = 0; i < levels.size(); ++i) {
    if (!levels[i].empty()) top = static_cast<int>(i) + 1;
  }
  return top;
}

int EdgeBuckets::heavy_count() const {
  int c = 0;
  for (const auto& levels : per_class) {
    for (const auto& bucket : levels) c += static_cast<int>(bucket.size());
  }
  return c;
}

EdgeBuckets bucket_metric_edges(const TerminalMetric& metric,
                                double mst_weight, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw input_error("bucket epsilon must be in (0,1), got " +
                      std::to_string(epsilon));
  }
  const int k = metric.size();
  EdgeBuckets out;
  out.epsilon = epsilon;
  out.w0 = k > 0 ? mst_weight / (static_cast<double>(k) *
                                 static_cast<double>(k))
                 : 0.0;

  int classes = 0;
  while (pow_int(2.0, classes) < 1.0 / epsilon) ++classes;
  if (classes == 0) classes = 1;
  out.classes = classes;

  const double inv_eps = 1.0 / epsilon;
  const double cheap_cap = out.w0 * inv_eps;
  out.per_class.assign(static_cast<size_t>(classes), {});

  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      MetricEdge e{a, b, metric.dist(a, b)};
      if (leq_tol(e.w, cheap_cap)) {
        out.cheap.push_back(e);
        continue;
      }
      // level: smallest i >= 1 with w <= w0 * eps^-(i+1)
      int i = 1;
      double upper = out.w0 * inv_eps * inv_eps;
      while (!leq_tol(e.w, upper)) {
        ++i;
        upper *= inv_eps;
        if (i > 64) {
          throw invariant_violation(
              "metric pair outruns every bucket level: weight " +
              std::to_string(e.w) + " against base " + std::to_string(out.w0));
        }
      }
      // class: smallest j >= 1 with w <= 2^j * w0 * eps^-i
      int j = 1;
      double scale = 2.0 * out.w0 * pow_int(inv_eps, i);
      while (!leq_tol(e.w, scale) && j < classes) {
        ++j;
        scale *= 2.0;
      }
      if (!leq_tol(e.w, scale) || !(e.w > scale / 2.0 * (1.0 - kRelTol))) {
        throw invariant_violation(
            "bucket window miss: weight " + std::to_string(e.w) +
            " assigned scale " + std::to_string(scale));
      }
      auto& levels = out.per_class[static_cast<size_t>(j - 1)];
      if (static_cast<int>(levels.size()) < i) {
        levels.resize(static_cast<size_t>(i));
      }
      levels[static_cast<size_t>(i - 1)].push_back(e);
    }
  }
  return out;
}

}  // namespace sforge
