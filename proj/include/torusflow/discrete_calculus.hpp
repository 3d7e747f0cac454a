#pragma once

#include "torusflow/grid_function.hpp"
#include "torusflow/quadrature.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace torusflow {

using ScalarField = std::function<double(const std::vector<double>&)>;

// ---------------------------------------------------------------------------
// inner products and norms

inline double inner_h(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid, v.grid);
  return u.grid.cell_measure() * u.values.dot(v.values);
}

inline double norm_h(const GridFunction& u) { return std::sqrt(inner_h(u, u)); }

inline double mean_value(const GridFunction& u) { return u.values.mean(); }

inline double norm_inf(const GridFunction& u) { return u.values.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// graph gradient / Laplacian

/// (grad_h u)(z, z~) = (u(z~) - u(z)) / h on edges; antisymmetric.
inline EdgeField graph_gradient(const GridFunction& u) {
  EdgeField g(u.grid);
  const auto edges = u.grid.edges();
  const double inv_h = 1.0 / u.grid.h();
  for (Index e = 0; e < static_cast<Index>(edges.size()); ++e) {
    const double d = inv_h * (u.values[edges[e].b] - u.values[edges[e].a]);
    g.values(e, 0) = d;
    g.values(e, 1) = -d;
  }
  return g;
}

/// (lap_h u)(z) = h^{-2} sum_{z~ ~ z} (u(z~) - u(z)).
inline GridFunction graph_laplacian(const GridFunction& u) {
  GridFunction out(u.grid);
  const double inv_h2 = 1.0 / (u.grid.h() * u.grid.h());
  for (Index z = 0; z < u.grid.num_nodes(); ++z) {
    double acc = 0.0;
    for (Index nb : u.grid.neighbors(z)) acc += u.values[nb] - u.values[z];
    out.values[z] = inv_h2 * acc;
  }
  return out;
}

/// <chi, phi>_{h,h} = (1/2) sum over ordered adjacent pairs of h^n chi phi.
inline double edge_inner(const EdgeField& chi, const EdgeField& phi) {
  require_same_grid(chi.grid, phi.grid);
  const double w = 0.5 * chi.grid.cell_measure();
  return w * (chi.values.col(0).dot(phi.values.col(0)) + chi.values.col(1).dot(phi.values.col(1)));
}

inline double edge_norm_sq(const EdgeField& chi) { return edge_inner(chi, chi); }

/// ||grad_h u||_{h,h}^2 without materializing the edge field.
inline double dirichlet_form(const GridFunction& u) {
  const auto edges = u.grid.edges();
  const double w = std::pow(u.grid.h(), u.grid.dim() - 2);
  double acc = 0.0;
  for (const auto& e : edges) {
    const double d = u.values[e.b] - u.values[e.a];
    acc += d * d;
  }
  return w * acc;
}

// ---------------------------------------------------------------------------
// energies

/// Anisotropic graph total variation (1/2) sum_{z; z~ ~ z} h^{n-1} |u(z)-u(z~)|.
inline double tv_h(const GridFunction& u) {
  const double w = 0.5 * std::pow(u.grid.h(), u.grid.dim() - 1);
  double acc = 0.0;
  for (Index z = 0; z < u.grid.num_nodes(); ++z)
    for (Index nb : u.grid.neighbors(z)) acc += std::abs(u.values[z] - u.values[nb]);
  return w * acc;
}

/// Dirichlet energy (1/2) ||grad_h u||_{h,h}^2.
inline double dirichlet_h(const GridFunction& u) { return 0.5 * dirichlet_form(u); }

inline double double_well(double x, double alpha) {
  const double s = x * x - 1.0;
  return 0.25 * alpha * s * s;
}

inline double double_well_prime(double x, double alpha) { return alpha * x * (x * x - 1.0); }

inline double potential_h(const GridFunction& u, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("potential_h: alpha must be positive");
  double acc = 0.0;
  for (Index z = 0; z < u.size(); ++z) acc += double_well(u.values[z], alpha);
  return u.grid.cell_measure() * acc;
}

inline double ac_h(const GridFunction& u, double alpha) {
  return dirichlet_h(u) + potential_h(u, alpha);
}

// ---------------------------------------------------------------------------
// piecewise-constant embedding / projection

/// i_h: extend each node value to its cell.
inline PiecewiseConstantField embed_pc(const GridFunction& u) { return {u.grid, u.values}; }

inline double inner_l2_pc(const PiecewiseConstantField& f, const PiecewiseConstantField& g) {
  require_same_grid(f.grid, g.grid);
  return f.grid.cell_measure() * f.cell_values.dot(g.cell_values);
}

/// p_h by per-cell tensor Gauss-Legendre quadrature of a callable.
inline GridFunction project_pc(const ScalarField& w, const TorusGrid& grid,
                               int quad_order = 8) {
  const GaussLegendre rule(quad_order);
  const int n = grid.dim();
  const double h = grid.h();
  GridFunction out(grid);
  std::vector<double> x(n);
  for (Index z = 0; z < grid.num_nodes(); ++z) {
    const auto c = grid.node_point(z);
    // tensor quadrature over Q_z^h, normalized by the cell measure
    std::function<double(int)> rec = [&](int axis) -> double {
      double acc = 0.0;
      for (int i = 0; i < rule.nodes.size(); ++i) {
        x[axis] = c[axis] + 0.5 * h * rule.nodes[i];
        acc += rule.weights[i] * (axis + 1 == n ? w(x) : rec(axis + 1));
      }
      return 0.5 * acc;  // weights sum to 2 per axis
    };
    out.values[z] = rec(0);
  }
  return out;
}

namespace detail {
/// Per-axis overlap of target cell index m (grid spacing ht) with source
/// cells (spacing hs), on the circle. Returns (source index, measure) pairs.
inline std::vector<std::pair<int, double>> axis_overlaps(int m, int k_target, int k_source) {
  const double ht = 1.0 / k_target, hs = 1.0 / k_source;
  const double t0 = m * ht - 0.5 * ht, t1 = t0 + ht;
  std::vector<std::pair<int, double>> out;
  for (int j = 0; j < k_source; ++j) {
    double total = 0.0;
    const double s0 = j * hs - 0.5 * hs;
    for (int wrap = -1; wrap <= 1; ++wrap) {
      const double a = std::max(t0, s0 + wrap), b = std::min(t1, s0 + hs + wrap);
      if (b > a) total += b - a;
    }
    if (total > 0.0) out.emplace_back(j, total);
  }
  return out;
}
}  // namespace detail

/// p_h of a piecewise-constant field, exact for any pair of axis resolutions.
inline GridFunction project_pc(const PiecewiseConstantField& w, const TorusGrid& grid) {
  if (w.grid.dim() != grid.dim())
    throw std::invalid_argument("project_pc: dimension mismatch");
  const int n = grid.dim();
  const int kt = grid.nodes_per_axis(), ks = w.grid.nodes_per_axis();
  // per-axis overlap tables are identical across axes (uniform grids)
  std::vector<std::vector<std::pair<int, double>>> table(kt);
  for (int m = 0; m < kt; ++m) table[m] = detail::axis_overlaps(m, kt, ks);

  GridFunction out(grid);
  const double inv_measure = 1.0 / grid.cell_measure();
  std::vector<int> src(n);
  for (Index z = 0; z < grid.num_nodes(); ++z) {
    const auto mi = grid.multi_index(z);
    std::function<double(int)> rec = [&](int axis) -> double {
      double acc = 0.0;
      for (const auto& [j, measure] : table[mi[axis]]) {
        src[axis] = j;
        acc += measure * (axis + 1 == n ? w.cell_values[w.grid.flat_index(src)] : rec(axis + 1));
      }
      return acc;
    };
    out.values[z] = inv_measure * rec(0);
  }
  return out;
}

/// || i_h f - w ||_{L^2} via per-cell quadrature against a callable.
inline double l2_distance_pc(const PiecewiseConstantField& f, const ScalarField& w,
                             int quad_order = 8) {
  const GaussLegendre rule(quad_order);
  const int n = f.grid.dim();
  const double h = f.grid.h();
  double total = 0.0;
  std::vector<double> x(n);
  for (Index z = 0; z < f.grid.num_nodes(); ++z) {
    const auto c = f.grid.node_point(z);
    const double v = f.cell_values[z];
    std::function<double(int)> rec = [&](int axis) -> double {
      double acc = 0.0;
      for (int i = 0; i < rule.nodes.size(); ++i) {
        x[axis] = c[axis] + 0.5 * h * rule.nodes[i];
        if (axis + 1 == n) {
          const double d = v - w(x);
          acc += rule.weights[i] * d * d;
        } else {
          acc += rule.weights[i] * rec(axis + 1);
        }
      }
      return 0.5 * h * acc;
    };
    total += rec(0);
  }
  return std::sqrt(total);
}

/// Anisotropic TV of a piecewise-constant field, computed as an axis-by-axis
/// jump sum over cell interfaces (cyclic essVar per row). The coincident
/// wrap interfaces at k = 2 are collapsed, consistent with the edge set.
inline double continuum_tv_pc(const PiecewiseConstantField& f) {
  const TorusGrid& g = f.grid;
  const int n = g.dim(), k = g.nodes_per_axis();
  const double area = std::pow(g.h(), n - 1);
  double total = 0.0;
  for (int axis = 0; axis < n; ++axis) {
    // sweep every row in direction `axis`
    for (Index z = 0; z < g.num_nodes(); ++z) {
      if (g.multi_index(z)[axis] != 0) continue;  // one representative per row
      const int jumps = (k == 2) ? 1 : k;
      Index cur = z;
      for (int j = 0; j < jumps; ++j) {
        const Index next = g.shift(cur, axis, +1);
        total += area * std::abs(f.cell_values[next] - f.cell_values[cur]);
        cur = next;
      }
    }
  }
  return total;
}

}  // namespace torusflow
