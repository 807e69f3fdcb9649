#include "sforge/instances.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "sforge/errors.hpp"
#include "sforge/rng.hpp"

namespace sforge {
namespace {

int square_side(int size) {
  int side = static_cast<int>(std::floor(std::sqrt(static_cast<double>(size))));
  while ((side + 1) * (side + 1) <= size) ++side;
  while (side > 1 && side * side > size) --side;
  return std::max(side, 1);
}

WeightedGraph grid_graph(int side, Rng& rng) {
  WeightedGraph g(side * side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const int v = r * side + c;
      if (c + 1 < side) g.add_edge(v, v + 1, rng.uniform(1.0, 2.0));
      if (r + 1 < side) g.add_edge(v, v + side, rng.uniform(1.0, 2.0));
    }
  }
  return g;
}

WeightedGraph geometric_graph(int n, Rng& rng) {
  std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<size_t>(i)] = rng.uniform01();
    ys[static_cast<size_t>(i)] = rng.uniform01();
  }
  auto dist = [&](int i, int j) {
    const double dx = xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)];
    const double dy = ys[static_cast<size_t>(i)] - ys[static_cast<size_t>(j)];
    return std::sqrt(dx * dx + dy * dy);
  };
  WeightedGraph g(n);
  const double radius =
      1.5 * std::sqrt(std::log(static_cast<double>(std::max(n, 2))) /
                      static_cast<double>(std::max(n, 1)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = dist(i, j);
      if (d > 0.0 && d <= radius) g.add_edge(i, j, d);
    }
  }
  // Nearest-pair links between leftover components keep the instance
  // connected without disturbing the geometry.
  std::vector<std::tuple<double, int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = dist(i, j);
      if (d > 0.0) pairs.push_back({d, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> comp = g.component_ids();
  for (const auto& [d, i, j] : pairs) {
    if (comp[static_cast<size_t>(i)] == comp[static_cast<size_t>(j)]) continue;
    if (g.find_edge(i, j) < 0) g.add_edge(i, j, d);
    comp = g.component_ids();
  }
  return g;
}

WeightedGraph tree_graph(int n, Rng& rng) {
  WeightedGraph g(n);
  for (int i = 1; i < n; ++i) {
    const int parent = rng.uniform_int(0, i - 1);
    g.add_edge(parent, i, rng.uniform(1.0, 2.0));
  }
  return g;
}

WeightedGraph path_plus_clique_graph(int n) {
  int q = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  q = std::min(std::max(q, 2), n);
  WeightedGraph g(n);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) g.add_edge(i, j, 1.0);
  }
  for (int v = q; v < n; ++v) g.add_edge(v == q ? 0 : v - 1, v, 1.0);
  return g;
}

PointSet uniform_points(int n, Rng& rng) {
  std::vector<std::vector<double>> coords(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform01();
    const double y = rng.uniform01();
    coords[static_cast<size_t>(i)] = {x, y};
  }
  return points_from_coords(std::move(coords));
}

PointSet jittered_grid_points(int side, Rng& rng) {
  std::vector<std::vector<double>> coords;
  coords.reserve(static_cast<size_t>(side) * static_cast<size_t>(side));
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double x = r + 0.25 * rng.uniform01();
      const double y = c + 0.25 * rng.uniform01();
      coords.push_back({x, y});
    }
  }
  return points_from_coords(std::move(coords));
}

}  // namespace

std::vector<std::string> instance_families() {
  return {"grid",   "random-geometric", "tree",
          "euclidean-points", "doubling-grid",    "path-plus-clique"};
}

GeneratedInstance generate_instance(const InstanceSpec& spec) {
  if (spec.size < 1) throw input_error("instance size must be positive");
  if (spec.terminals < 0) throw input_error("terminal count must not be negative");
  Rng rng(spec.seed);
  GeneratedInstance out;
  if (spec.family == "grid") {
    out.graph.graph = grid_graph(square_side(spec.size), rng);
  } else if (spec.family == "random-geometric") {
    out.graph.graph = geometric_graph(spec.size, rng);
  } else if (spec.family == "tree") {
    out.graph.graph = tree_graph(spec.size, rng);
  } else if (spec.family == "path-plus-clique") {
    out.graph.graph = path_plus_clique_graph(spec.size);
  } else if (spec.family == "euclidean-points") {
    out.is_points = true;
    out.points = uniform_points(spec.size, rng);
  } else if (spec.family == "doubling-grid") {
    out.is_points = true;
    out.points = jittered_grid_points(square_side(spec.size), rng);
  } else {
    throw input_error("unknown instance family: " + spec.family);
  }
  const int n = out.is_points ? out.points.size() : out.graph.graph.vertex_count();
  out.terminals = rng.sample_indices(n, std::min(spec.terminals, n));
  if (!out.is_points) out.graph.terminals = out.terminals;
  return out;
}

GraphInstance generate_graph(const InstanceSpec& spec) {
  GeneratedInstance inst = generate_instance(spec);
  if (inst.is_points) {
    throw input_error(spec.family + " generates a point set, not a graph");
  }
  return std::move(inst.graph);
}

}  // namespace sforge
