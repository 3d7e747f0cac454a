#pragma once

#include "torusflow/discrete_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace torusflow {

struct ProxResult {
  GridFunction u;
  int iterations = 0;
  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
};

/// One implicit step of the total-variation flow:
///   argmin_v  phi_TV(v) + ||v - u||_h^2 / (2 tau),
/// solved on the dual (one bounded multiplier per edge) with FISTA and a
/// duality-gap stopping rule. `warm` carries the multipliers across steps.
inline ProxResult tv_prox(const GridFunction& u, double tau, double eps_prox,
                          Eigen::VectorXd* warm = nullptr, int max_iter = 200000) {
  if (tau <= 0.0) throw std::invalid_argument("tv_prox: tau must be positive");
  if (eps_prox <= 0.0) throw std::invalid_argument("tv_prox: eps_prox must be positive");
  const TorusGrid& g = u.grid;
  const auto edges = g.edges();
  const Index ne = static_cast<Index>(edges.size());
  const int n = g.dim();
  const double h = g.h();
  const double hn = g.cell_measure();
  const double area = std::pow(h, n - 1);
  const double c = tau / h;  // v = u - c D^T p

  Eigen::VectorXd p = (warm && warm->size() == ne) ? *warm : Eigen::VectorXd::Zero(ne);
  Eigen::VectorXd p_prev = p, y = p;

  // Lipschitz constant of the dual gradient: c^2 h^n ||D D^T|| <= 4 n tau^2 h^{n-2}
  const double L = 4.0 * n * tau * tau * std::pow(h, n - 2);
  const double step = 1.0 / L;
  double t_acc = 1.0;

  Eigen::VectorXd v(u.size()), dv(ne), grad(ne);
  ProxResult res{GridFunction(g), 0, std::numeric_limits<double>::infinity(), false};

  auto splitting = [&](const Eigen::VectorXd& q) {
    // v(q) and D v(q)
    v = u.values;
    for (Index e = 0; e < ne; ++e) {
      v[edges[e].a] += c * q[e];
      v[edges[e].b] -= c * q[e];
    }
    for (Index e = 0; e < ne; ++e) dv[e] = v[edges[e].b] - v[edges[e].a];
  };

  for (int it = 0; it < max_iter; ++it) {
    splitting(y);
    // gradient of (h^n/2)|u - c D^T y|^2 in y
    grad = -c * hn * dv;
    p_prev.swap(p);
    p = (y - step * grad).cwiseMax(-1.0).cwiseMin(1.0);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
    y = p + ((t_acc - 1.0) / t_next) * (p - p_prev);
    t_acc = t_next;

    splitting(p);
    const double gap = area * (dv.cwiseAbs().sum() - p.dot(dv));
    res.iterations = it + 1;
    res.gap = gap;
    if (gap <= eps_prox) {
      res.converged = true;
      break;
    }
  }
  splitting(p);
  res.u.values = v;
  if (warm) *warm = p;
  return res;
}

/// Discrete trajectory of a minimizing-movement flow: state after every step,
/// including the initial datum at t = 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<GridFunction> states;
  std::vector<double> energies;
  bool prox_converged = true;
  double worst_gap = 0.0;
};

/// Minimizing-movement scheme for the graph TV flow with warm-started prox.
inline Trajectory tv_flow_mm(const GridFunction& u0, double T, double tau, double eps_prox,
                             int max_iter = 200000) {
  if (T < 0.0 || tau <= 0.0) throw std::invalid_argument("tv_flow_mm: need T >= 0, tau > 0");
  Trajectory traj;
  const int steps = static_cast<int>(std::ceil(T / tau - 1e-12));
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  traj.energies.push_back(tv_h(u0));
  Eigen::VectorXd warm;
  GridFunction u = u0;
  for (int m = 1; m <= steps; ++m) {
    ProxResult r = tv_prox(u, tau, eps_prox, &warm, max_iter);
    traj.prox_converged = traj.prox_converged && r.converged;
    traj.worst_gap = std::max(traj.worst_gap, r.gap);
    u = r.u;
    traj.times.push_back(m * tau);
    traj.states.push_back(u);
    traj.energies.push_back(tv_h(u));
  }
  return traj;
}

// ---------------------------------------------------------------------------
// exact 1-D TV flow (independent oracle)

/// Exact solution of the 1-D graph/continuum TV flow for piecewise-constant
/// data: plateaus move with speed (s_left + s_right) / length, where s = +1
/// when the adjacent plateau is higher, and meeting plateaus merge. The
/// evolution is piecewise linear in time between merge events.
class PlateauOracle1D {
public:
  explicit PlateauOracle1D(const GridFunction& u0, double t_max, double merge_tol = 1e-12)
      : grid_(u0.grid) {
    if (grid_.dim() != 1) throw std::invalid_argument("PlateauOracle1D: 1-D only");
    build_initial(u0, merge_tol);
    advance(t_max, merge_tol);
  }

  /// Heights at time t mapped back to the nodes.
  GridFunction sample(double t) const {
    const Snapshot& s = at(t);
    GridFunction out(grid_);
    const double dt = t - s.time;
    for (std::size_t i = 0; i < s.start.size(); ++i) {
      const double val = s.height[i] + dt * s.velocity[i];
      for (Index j = 0; j < s.len[i]; ++j) out.values[(s.start[i] + j) % grid_.num_nodes()] = val;
    }
    return out;
  }

  double energy(double t) const {
    const Snapshot& s = at(t);
    const std::size_t m = s.start.size();
    if (m < 2) return 0.0;
    const double dt = t - s.time;
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + 1) % m;
      acc += std::abs((s.height[i] + dt * s.velocity[i]) - (s.height[j] + dt * s.velocity[j]));
    }
    return acc;
  }

  /// int_0^t phi_TV(u(s)) ds, exact (energy is piecewise linear in time).
  double energy_integral(double t) const {
    double acc = 0.0;
    for (std::size_t e = 0; e + 1 < snapshots_.size() && snapshots_[e].time < t; ++e) {
      const double hi = std::min(t, snapshots_[e + 1].time);
      acc += 0.5 * (hi - snapshots_[e].time) * (energy(snapshots_[e].time) + energy(hi - 0.0));
    }
    const double last = snapshots_.back().time;
    if (t > last) acc += 0.5 * (t - last) * (energy(last) + energy(t));
    return acc;
  }

  std::size_t event_count() const { return snapshots_.size() - 1; }

private:
  struct Snapshot {
    double time;
    std::vector<Index> start, len;
    std::vector<double> height, velocity;
  };

  void build_initial(const GridFunction& u0, double tol) {
    const Index k = grid_.num_nodes();
    Snapshot s;
    s.time = 0.0;
    Index i = 0;
    while (i < k) {
      Index len = 1;
      while (i + len < k && std::abs(u0.values[i + len] - u0.values[i]) < tol) ++len;
      s.start.push_back(i);
      s.len.push_back(len);
      s.height.push_back(u0.values[i]);
      i += len;
    }
    // wrap: first and last plateau may be the same level set
    if (s.start.size() > 1 && std::abs(s.height.front() - s.height.back()) < tol) {
      s.start.front() = s.start.back();
      s.len.front() += s.len.back();
      s.start.pop_back();
      s.len.pop_back();
      s.height.pop_back();
    }
    set_velocities(s);
    snapshots_.push_back(std::move(s));
  }

  void set_velocities(Snapshot& s) const {
    const std::size_t m = s.start.size();
    s.velocity.assign(m, 0.0);
    if (m < 2) return;
    const double h = grid_.h();
    for (std::size_t i = 0; i < m; ++i) {
      const double left = s.height[(i + m - 1) % m], right = s.height[(i + 1) % m];
      const double sl = left > s.height[i] ? 1.0 : -1.0;
      const double sr = right > s.height[i] ? 1.0 : -1.0;
      s.velocity[i] = (sl + sr) / (double(s.len[i]) * h);
    }
  }

  void advance(double t_max, double tol) {
    while (true) {
      Snapshot& cur = snapshots_.back();
      const std::size_t m = cur.start.size();
      if (m < 2) break;
      double dt_min = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = (i + 1) % m;
        const double dv = cur.velocity[i] - cur.velocity[j];
        const double dh = cur.height[j] - cur.height[i];
        if (dv * dh > 0.0) dt_min = std::min(dt_min, dh / dv);
      }
      if (!std::isfinite(dt_min) || cur.time + dt_min > t_max) break;

      Snapshot next;
      next.time = cur.time + dt_min;
      next.start = cur.start;
      next.len = cur.len;
      next.height.resize(m);
      for (std::size_t i = 0; i < m; ++i) next.height[i] = cur.height[i] + dt_min * cur.velocity[i];

      // merge adjacent plateaus that have met (repeat until stable, incl. wrap)
      bool merged = true;
      while (merged && next.start.size() > 1) {
        merged = false;
        const std::size_t mm = next.start.size();
        for (std::size_t i = 0; i < mm; ++i) {
          const std::size_t j = (i + 1) % mm;
          if (std::abs(next.height[i] - next.height[j]) < tol) {
            if (j == 0) {  // wrap: fold first into last
              next.start[i] = next.start[i];
              next.len[i] += next.len[j];
              next.start.erase(next.start.begin());
              next.len.erase(next.len.begin());
              next.height.erase(next.height.begin());
            } else {
              next.len[i] += next.len[j];
              next.start.erase(next.start.begin() + j);
              next.len.erase(next.len.begin() + j);
              next.height.erase(next.height.begin() + j);
            }
            merged = true;
            break;
          }
        }
      }
      set_velocities(next);
      snapshots_.push_back(std::move(next));
      if (snapshots_.size() > 4 * static_cast<std::size_t>(grid_.num_nodes()) + 8)
        throw std::runtime_error("PlateauOracle1D: event count exceeded bound");
    }
  }

  const Snapshot& at(double t) const {
    for (std::size_t i = snapshots_.size(); i-- > 0;)
      if (snapshots_[i].time <= t + 1e-15) return snapshots_[i];
    return snapshots_.front();
  }

  TorusGrid grid_;
  std::vector<Snapshot> snapshots_;
};

}  // namespace torusflow
