#pragma once

#include "torusflow/gamma_ops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace torusflow {

using Func1D = std::function<double(double)>;

/// Continuous piecewise-linear interpolant with nodes at kh (element of H_h).
struct PiecewiseLinearField {
  TorusGrid grid;
  Eigen::VectorXd nodal;

  double operator()(double x) const {
    const Index k = grid.num_nodes();
    double y = x - std::floor(x);
    double s = y * k;
    Index i = static_cast<Index>(std::floor(s));
    if (i >= k) i = k - 1;
    const double t = s - double(i);
    return nodal[i] * (1.0 - t) + nodal[(i + 1) % k] * t;
  }

  /// Constant slope on [ih, (i+1)h).
  double slope(Index i) const {
    const Index k = grid.num_nodes();
    return (nodal[(i + 1) % k] - nodal[i]) * double(k);
  }
};

/// I_h: linear interpolation of nodal values.
inline PiecewiseLinearField lin_embed(const GridFunction& u) {
  require_1d(u.grid);
  return {u.grid, u.values};
}

/// ||I_h u||_{L^2}^2 = (h/3) sum (u_k^2 + u_k u_{k+1} + u_{k+1}^2), closed form.
inline double pwl_l2_norm_sq(const GridFunction& u) {
  require_1d(u.grid);
  const Index k = u.size();
  const double h = u.grid.h();
  double acc = 0.0;
  for (Index i = 0; i < k; ++i) {
    const double a = u.values[i], b = u.values[(i + 1) % k];
    acc += a * a + a * b + b * b;
  }
  return h / 3.0 * acc;
}

/// (u, v)_h = <I_h u, I_h v>_{L^2}, by exact segment integrals.
inline double induced_inner(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid, v.grid);
  require_1d(u.grid);
  const Index k = u.size();
  const double h = u.grid.h();
  double acc = 0.0;
  for (Index i = 0; i < k; ++i) {
    const Index j = (i + 1) % k;
    acc += 2.0 * u.values[i] * v.values[i] + 2.0 * u.values[j] * v.values[j] +
           u.values[i] * v.values[j] + u.values[j] * v.values[i];
  }
  return h / 6.0 * acc;
}

inline double induced_norm(const GridFunction& u) { return std::sqrt(pwl_l2_norm_sq(u)); }

/// ||I_h u||_{L^4}^4 by the exact even-power segment formula.
inline double pwl_l4_norm4(const GridFunction& u) {
  require_1d(u.grid);
  const Index k = u.size();
  const double h = u.grid.h();
  double acc = 0.0;
  for (Index i = 0; i < k; ++i) {
    const double a = u.values[i], b = u.values[(i + 1) % k];
    acc += a * a * a * a + a * a * a * b + a * a * b * b + a * b * b * b + b * b * b * b;
  }
  return h / 5.0 * acc;
}

/// ||u||_{L^4_h}^4 = h sum |u_k|^4.
inline double l4h_norm4(const GridFunction& u) {
  return u.grid.cell_measure() * u.values.array().pow(4).sum();
}

/// pi_bar_h: nodal samples of a continuous function.
inline GridFunction nodal_interpolate(const Func1D& w, const TorusGrid& grid) {
  require_1d(grid);
  GridFunction out(grid);
  const double h = grid.h();
  for (Index i = 0; i < grid.num_nodes(); ++i) out.values[i] = w(i * h);
  return out;
}

/// Hat-function moments b_k = h^{-1} int w phi_k, per-interval Gauss quadrature.
inline Eigen::VectorXd hat_moments(const Func1D& w, const TorusGrid& grid, int quad_order = 8) {
  require_1d(grid);
  const GaussLegendre rule(quad_order);
  const Index k = grid.num_nodes();
  const double h = grid.h();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  for (Index i = 0; i < k; ++i) {
    const double a = i * h;
    for (int q = 0; q < rule.nodes.size(); ++q) {
      const double t = 0.5 * (1.0 + rule.nodes[q]);  // in (0,1)
      const double wq = 0.5 * rule.weights[q];       // interval weight / h
      const double val = w(a + t * h);
      b[i] += wq * val * (1.0 - t);
      b[(i + 1) % k] += wq * val * t;
    }
  }
  return b;
}

/// P_h = pi_bar_h o P_bar_h: solve Gamma p = b with hat moments b.
inline GridFunction l2_project(const Func1D& w, const TorusGrid& grid, int quad_order = 8) {
  GridFunction b(grid, hat_moments(w, grid, quad_order));
  return gamma_solve(b);
}

namespace detail {
/// Integrate g over [0,1) with 2-point Gauss on each segment of the sorted
/// breakpoint list; exact when g is piecewise cubic between breakpoints.
template <class G>
double integrate_piecewise(G&& g, const std::vector<double>& breakpoints) {
  const double c = 0.5 / std::sqrt(3.0);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (b <= a) continue;
    const double mid = 0.5 * (a + b), half = b - a;
    acc += 0.5 * half * (g(mid - c * half) + g(mid + c * half));
  }
  return acc;
}

inline std::vector<double> merged_breakpoints(const std::vector<double>& a,
                                              const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-14; }),
            out.end());
  return out;
}

inline std::vector<double> node_breakpoints(const TorusGrid& g) {
  std::vector<double> out;
  const Index k = g.num_nodes();
  for (Index i = 0; i <= k; ++i) out.push_back(double(i) / double(k));
  return out;
}

inline std::vector<double> cell_breakpoints(const TorusGrid& g) {
  std::vector<double> out;
  const Index k = g.num_nodes();
  out.push_back(0.0);
  for (Index i = 0; i < k; ++i) {
    double x = (double(i) + 0.5) / double(k);
    if (x < 1.0) out.push_back(x);
  }
  out.push_back(1.0);
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace detail

/// Exact L^2(T) distance between two piecewise-linear interpolants.
inline double pwl_l2_distance(const PiecewiseLinearField& f, const PiecewiseLinearField& g) {
  auto bp = detail::merged_breakpoints(detail::node_breakpoints(f.grid),
                                       detail::node_breakpoints(g.grid));
  double s = detail::integrate_piecewise(
      [&](double x) {
        const double d = f(x) - g(x);
        return d * d;
      },
      bp);
  return std::sqrt(std::max(s, 0.0));
}

/// Exact L^2(T) distance between a piecewise-constant embedding and a
/// piecewise-linear interpolant (1-D).
inline double pc_pwl_l2_distance(const PiecewiseConstantField& f, const PiecewiseLinearField& g) {
  require_1d(f.grid);
  const Index k = f.grid.num_nodes();
  auto eval_pc = [&](double x) {
    double y = x - std::floor(x);
    Index i = static_cast<Index>(std::floor(y * k + 0.5));
    return f.cell_values[((i % k) + k) % k];
  };
  auto bp = detail::merged_breakpoints(detail::cell_breakpoints(f.grid),
                                       detail::node_breakpoints(g.grid));
  double s = detail::integrate_piecewise(
      [&](double x) {
        const double d = eval_pc(x) - g(x);
        return d * d;
      },
      bp);
  return std::sqrt(std::max(s, 0.0));
}

/// Hat moments of a piecewise-linear field on a commensurate finer grid,
/// exact (integrand is piecewise quadratic).
inline Eigen::VectorXd hat_moments(const PiecewiseLinearField& w, const TorusGrid& grid) {
  require_1d(grid);
  const Index k = grid.num_nodes();
  const double h = grid.h();
  if (w.grid.num_nodes() % k != 0)
    throw std::invalid_argument("hat_moments: finer grid must be commensurate");
  auto bp = detail::merged_breakpoints(detail::node_breakpoints(grid),
                                       detail::node_breakpoints(w.grid));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  for (Index i = 0; i < k; ++i) {
    // periodic hat at node i, supported on [(i-1)h, (i+1)h]
    auto hat = [&](double x) {
      double d = x - double(i) * h;
      d -= std::round(d);  // wrap to [-1/2, 1/2)
      const double t = std::abs(d) / h;
      return t < 1.0 ? 1.0 - t : 0.0;
    };
    b[i] = detail::integrate_piecewise([&](double x) { return hat(x) * w(x); }, bp) / h;
  }
  return b;
}

inline GridFunction l2_project(const PiecewiseLinearField& w, const TorusGrid& grid) {
  GridFunction b(grid, hat_moments(w, grid));
  return gamma_solve(b);
}

}  // namespace torusflow
