#include "sforge/points.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sforge/errors.hpp"
#include "sforge/metric.hpp"
#include "sforge/report.hpp"

namespace sforge {

double PointSet::dist(int i, int j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size())
    throw input_error("point id out of range");
  if (matrix_mode())
    return matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
  const auto& a = coords[static_cast<size_t>(i)];
  const auto& b = coords[static_cast<size_t>(j)];
  double s = 0.0;
  for (size_t d = 0; d < a.size(); ++d) {
    double diff = a[d] - b[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

PointSet points_from_coords(std::vector<std::vector<double>> coords) {
  for (const auto& p : coords) {
    if (p.size() != coords[0].size())
      throw input_error("points have mismatched dimensions");
    for (double x : p)
      if (!std::isfinite(x)) throw input_error("non-finite coordinate");
  }
  PointSet ps;
  ps.coords = std::move(coords);
  return ps;
}

PointSet points_from_matrix(std::vector<std::vector<double>> matrix) {
  const size_t n = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != n) throw input_error("distance matrix is not square");
  for (size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0)
      throw input_error("distance matrix has non-zero diagonal");
    for (size_t j = 0; j < n; ++j) {
      double d = matrix[i][j];
      if (!std::isfinite(d) || d < 0.0)
        throw input_error("distance matrix entry invalid");
      if (matrix[j][i] != d)
        throw input_error("distance matrix is not symmetric");
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l)
        if (!leq_tol(matrix[i][j], matrix[i][l] + matrix[l][j], kRelTol))
          throw input_error("distance matrix violates triangle inequality");
  PointSet ps;
  ps.matrix = std::move(matrix);
  return ps;
}

PointSet read_points_csv(std::istream& in) {
  std::vector<std::vector<double>> coords;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    std::vector<double> p;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        p.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw input_error("bad coordinate at line " + std::to_string(lineno));
      }
    }
    coords.push_back(std::move(p));
  }
  return points_from_coords(std::move(coords));
}

PointSet read_points_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open " + path);
  return read_points_csv(f);
}

void write_points_csv(std::ostream& out, const PointSet& ps) {
  if (ps.matrix_mode())
    throw input_error("matrix-mode point set has no coordinates to write");
  for (const auto& p : ps.coords) {
    for (size_t d = 0; d < p.size(); ++d) {
      if (d) out << ',';
      out << format9(p[d]);
    }
    out << '\n';
  }
}

PointSet read_metric_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("bad metric JSON: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("dist"))
    throw input_error("metric JSON needs fields n and dist");
  int n = j["n"].get<int>();
  auto m = j["dist"].get<std::vector<std::vector<double>>>();
  if (static_cast<int>(m.size()) != n)
    throw input_error("metric JSON: dist size does not match n");
  return points_from_matrix(std::move(m));
}

PointSet read_metric_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open " + path);
  return read_metric_json(f);
}

void write_metric_json(std::ostream& out, const PointSet& ps) {
  const int n = ps.size();
  out << "{\"n\": " << n << ", \"dist\": [";
  for (int i = 0; i < n; ++i) {
    if (i) out << ", ";
    out << '[';
    for (int j = 0; j < n; ++j) {
      if (j) out << ", ";
      out << format9(ps.dist(i, j));
    }
    out << ']';
  }
  out << "]}\n";
}

WeightedGraph complete_graph(const PointSet& ps) {
  const int n = ps.size();
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = ps.dist(i, j);
      if (d > 0.0) g.add_edge(i, j, d);
    }
  return g;
}

std::vector<int> r_net(const PointSet& ps, const std::vector<int>& subset,
                       double r) {
  if (!(r > 0.0)) throw input_error("net radius must be positive");
  std::vector<int> net;
  for (int p : subset) {
    bool covered = false;
    for (int q : net)
      if (ps.dist(p, q) <= r) {
        covered = true;
        break;
      }
    if (!covered) net.push_back(p);
  }
  return net;
}

}  // namespace sforge
