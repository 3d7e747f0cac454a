#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace torusflow {

using Index = Eigen::Index;

/// Cubic discretization of the flat torus T^n with k nodes per axis and
/// mesh size h = 1/k. Nodes are enumerated row-major over the multi-index
/// (last axis fastest); all index arithmetic is modulo k.
class TorusGrid {
public:
  TorusGrid(int dim, int nodes_per_axis) : n_(dim), k_(nodes_per_axis) {
    if (dim < 1) throw std::invalid_argument("TorusGrid: dimension must be >= 1");
    if (nodes_per_axis < 2)
      throw std::invalid_argument("TorusGrid: need at least 2 nodes per axis (h must lie in (0,1))");
    num_nodes_ = 1;
    for (int i = 0; i < dim; ++i) num_nodes_ *= nodes_per_axis;
  }

  int dim() const { return n_; }
  int nodes_per_axis() const { return k_; }
  double h() const { return 1.0 / k_; }
  Index num_nodes() const { return num_nodes_; }
  double cell_measure() const { return std::pow(h(), n_); }

  bool operator==(const TorusGrid& o) const { return n_ == o.n_ && k_ == o.k_; }
  bool operator!=(const TorusGrid& o) const { return !(*this == o); }

  std::vector<int> multi_index(Index flat) const {
    std::vector<int> mi(n_);
    for (int i = n_ - 1; i >= 0; --i) {
      mi[i] = static_cast<int>(flat % k_);
      flat /= k_;
    }
    return mi;
  }

  Index flat_index(const std::vector<int>& mi) const {
    Index flat = 0;
    for (int i = 0; i < n_; ++i) {
      int c = mi[i] % k_;
      if (c < 0) c += k_;
      flat = flat * k_ + c;
    }
    return flat;
  }

  /// Flat index of the node shifted by `step` along `axis` (periodic).
  Index shift(Index flat, int axis, int step) const {
    Index stride = 1;
    for (int i = n_ - 1; i > axis; --i) stride *= k_;
    Index axis_coord = (flat / stride) % k_;
    Index rest = flat - axis_coord * stride;
    Index c = (axis_coord + step) % k_;
    if (c < 0) c += k_;
    return rest + c * stride;
  }

  /// Neighbor set {z~ : (z, z~) in E_h}; the k = 2 wrap pair is collapsed
  /// to a single neighbor, so the degree is 2n for k >= 3 and n for k = 2.
  std::vector<Index> neighbors(Index flat) const {
    std::vector<Index> out;
    out.reserve(2 * n_);
    for (int axis = 0; axis < n_; ++axis) {
      Index plus = shift(flat, axis, +1);
      Index minus = shift(flat, axis, -1);
      out.push_back(plus);
      if (minus != plus) out.push_back(minus);
    }
    return out;
  }

  struct Edge {
    Index a, b;  // unordered pair, a's axis-coordinate precedes b's
    int axis;
  };

  /// Deduplicated edge set: each unordered pair once. For k >= 3 these are
  /// the +1 steps along every axis; for k = 2 the two coincident wrap edges
  /// are stored once.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(num_nodes_) * n_);
    for (Index z = 0; z < num_nodes_; ++z) {
      const auto mi = multi_index(z);
      for (int axis = 0; axis < n_; ++axis) {
        if (k_ == 2 && mi[axis] == 1) continue;  // collapsed wrap edge
        out.push_back({z, shift(z, axis, +1), axis});
      }
    }
    return out;
  }

  /// Reduce a coordinate modulo 1 into [-h/2, 1-h/2).
  double reduce(double x) const {
    const double lo = -0.5 * h();
    double y = x - std::floor(x - lo);
    if (y >= 1.0 + lo) y -= 1.0;  // guard against rounding at the top edge
    return y;
  }

  /// The unique node z with x in Q_z^h (half-open cells, centered at nodes).
  Index cell_of(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
      throw std::invalid_argument("cell_of: point dimension mismatch");
    std::vector<int> mi(n_);
    for (int i = 0; i < n_; ++i) {
      double y = reduce(x[i]);
      int c = static_cast<int>(std::floor((y + 0.5 * h()) / h()));
      if (c >= k_) c -= k_;
      if (c < 0) c += k_;
      mi[i] = c;
    }
    return flat_index(mi);
  }

  /// Coordinates of node `flat` in the fundamental domain.
  std::vector<double> node_point(Index flat) const {
    const auto mi = multi_index(flat);
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = mi[i] * h();
    return x;
  }

private:
  int n_;
  int k_;
  Index num_nodes_;
};

}  // namespace torusflow
