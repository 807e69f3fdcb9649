#pragma once

/// \file instances.hpp
/// Seeded instance families.  The same spec always produces the same
/// bytes: structure first, weights in insertion order, terminal sample
/// last, all from one named generator stream.

#include <cstdint>
#include <string>
#include <vector>

#include "sforge/graph.hpp"
#include "sforge/points.hpp"

namespace sforge {

struct InstanceSpec {
  // grid | random-geometric | tree | euclidean-points | doubling-grid |
  // path-plus-clique
  std::string family = "grid";
  int size = 9;  // vertex/point count; grids use the largest square below
  int terminals = 4;
  uint64_t seed = 1;
};

struct GeneratedInstance {
  bool is_points = false;
  GraphInstance graph;          // graph families
  PointSet points;              // point families
  std::vector<int> terminals;   // sorted sample, also mirrored in graph
};

// Throws input_error on an unknown family or non-positive size.
GeneratedInstance generate_instance(const InstanceSpec& spec);

// The graph families ("grid", "random-geometric", "tree",
// "path-plus-clique"); input_error for point families.
GraphInstance generate_graph(const InstanceSpec& spec);

std::vector<std::string> instance_families();

}  // namespace sforge
