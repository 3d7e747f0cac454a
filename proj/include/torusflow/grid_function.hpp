#pragma once

#include "torusflow/torus_grid.hpp"

#include <Eigen/Core>

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace torusflow {

/// Real values on the nodes of V_h (an element of L^2_h).
struct GridFunction {
  TorusGrid grid;
  Eigen::VectorXd values;

  GridFunction(const TorusGrid& g) : grid(g), values(Eigen::VectorXd::Zero(g.num_nodes())) {}
  GridFunction(const TorusGrid& g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.num_nodes())
      throw std::invalid_argument("GridFunction: value count != k^n");
  }

  double& operator[](Index i) { return values[i]; }
  double operator[](Index i) const { return values[i]; }
  Index size() const { return values.size(); }
};

/// Antisymmetric-capable values on directed edges. Column 0 holds the value
/// in the a->b direction of the deduplicated edge list, column 1 in b->a.
struct EdgeField {
  TorusGrid grid;
  Eigen::MatrixX2d values;

  explicit EdgeField(const TorusGrid& g)
      : grid(g), values(Eigen::MatrixX2d::Zero(static_cast<Index>(g.edges().size()), 2)) {}
};

/// One real per cell Q_z^h; the continuum representative i_h v.
struct PiecewiseConstantField {
  TorusGrid grid;
  Eigen::VectorXd cell_values;
};

inline void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (a != b) throw std::invalid_argument("grid mismatch");
}

/// Shortest decimal form that round-trips a double exactly.
inline std::string decimal17(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

inline void write_csv(const GridFunction& u, std::ostream& os) {
  os << "index,value\n";
  for (Index i = 0; i < u.size(); ++i) os << i << ',' << decimal17(u.values[i]) << '\n';
}

inline GridFunction read_csv(const TorusGrid& grid, std::istream& is) {
  GridFunction u(grid);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("read_csv: malformed line");
    Index i = std::stoll(line.substr(0, comma));
    if (i < 0 || i >= u.size()) throw std::runtime_error("read_csv: index out of range");
    u.values[i] = std::stod(line.substr(comma + 1));
  }
  return u;
}

/// JSON envelope {n, k, values}; values are decimal17 strings so the
/// round-trip is bit-exact. `representation` tags alternate continuum
/// readings of the same nodal data (e.g. "pwl").
inline std::string to_json(const GridFunction& u, const std::string& representation = "") {
  std::ostringstream os;
  os << "{\"n\":" << u.grid.dim() << ",\"k\":" << u.grid.nodes_per_axis();
  if (!representation.empty()) os << ",\"representation\":\"" << representation << "\"";
  os << ",\"values\":[";
  for (Index i = 0; i < u.size(); ++i) {
    if (i) os << ',';
    os << '"' << decimal17(u.values[i]) << '"';
  }
  os << "]}";
  return os.str();
}

}  // namespace torusflow
