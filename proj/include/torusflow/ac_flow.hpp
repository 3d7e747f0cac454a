#pragma once

#include "torusflow/gamma_ops.hpp"
#include "torusflow/interp1d.hpp"
#include "torusflow/tv_flow.hpp"  // Trajectory

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace torusflow {

/// Reaction data for the semilinear flows. The canonical choice splits the
/// double-well derivative as W'(x) = F(x) - lambda x with F nondecreasing,
/// which requires lambda > alpha.
struct PotentialSpec {
  double alpha;
  double lambda;
  std::function<double(double)> F;        // nondecreasing, F(0) = 0
  std::function<double(double)> Fprime;

  static PotentialSpec canonical(double alpha, double lambda) {
    if (alpha <= 0.0) throw std::invalid_argument("PotentialSpec: alpha must be positive");
    if (lambda <= alpha) throw std::invalid_argument("PotentialSpec: need lambda > alpha");
    PotentialSpec s;
    s.alpha = alpha;
    s.lambda = lambda;
    s.F = [alpha, lambda](double x) { return alpha * x * (x * x - 1.0) + lambda * x; };
    s.Fprime = [alpha, lambda](double x) { return alpha * (3.0 * x * x - 1.0) + lambda; };
    return s;
  }

  /// N = sup of F' over the growth envelope |s| <= ||u0||_inf e^{lambda T}.
  /// The canonical F' is even and increasing in |s|, so the sup sits at the
  /// endpoint; user reactions are sampled densely on the envelope.
  double reaction_lipschitz(double u0_inf, double T, int samples = 4096) const {
    const double R = u0_inf * std::exp(lambda * T);
    double N = Fprime(R);
    for (int i = 0; i <= samples; ++i) {
      const double s = -R + 2.0 * R * double(i) / double(samples);
      N = std::max(N, Fprime(s));
    }
    return N;
  }
};

enum class AcMetric { Standard, GammaModified };

/// Semi-implicit stepping for the 1-D semilinear flows: diffusion implicit
/// via a circulant solve, reaction explicit.
///   standard:  u^{m+1} = (Id - tau Lap)^{-1} (u^m + tau (lambda u^m - F(u^m)))
///   modified:  (Gamma - tau Lap) U^{m+1} = Gamma U^m + tau (lambda U^m - F(U^m))
/// Records the state at the step times nearest the requested sample times
/// (always including t = 0 and the final step). Growth beyond 10x the
/// comparison-principle envelope aborts the run.
inline Trajectory ac_flow(const GridFunction& u0, const PotentialSpec& spec, double T, double tau,
                          AcMetric metric, const std::vector<double>& sample_times) {
  require_1d(u0.grid);
  if (T < 0.0 || tau <= 0.0) throw std::invalid_argument("ac_flow: need T >= 0, tau > 0");
  const Index k = u0.size();
  const int steps = static_cast<int>(std::ceil(T / tau - 1e-12));

  Eigen::VectorXd symbol(k);
  const Eigen::VectorXd lap = laplacian_spectrum(k);
  const Eigen::VectorXd gam = gamma_spectrum(k);
  for (Index l = 0; l < k; ++l) {
    const double diag = (metric == AcMetric::Standard) ? 1.0 : gam[l];
    symbol[l] = 1.0 / (diag - tau * lap[l]);
  }
  SpectralCirculant solver(k, symbol);  // multiplier is the resolvent itself

  std::vector<int> sample_steps;
  sample_steps.push_back(0);
  for (double t : sample_times) {
    int m = static_cast<int>(std::llround(t / tau));
    sample_steps.push_back(std::clamp(m, 0, steps));
  }
  sample_steps.push_back(steps);
  std::sort(sample_steps.begin(), sample_steps.end());
  sample_steps.erase(std::unique(sample_steps.begin(), sample_steps.end()), sample_steps.end());

  const double u0_inf = norm_inf(u0);
  Trajectory traj;
  GridFunction u = u0;
  std::size_t next = 0;
  auto record = [&](int m) {
    while (next < sample_steps.size() && sample_steps[next] == m) {
      traj.times.push_back(m * tau);
      traj.states.push_back(u);
      ++next;
    }
  };
  record(0);
  Eigen::VectorXd rhs(k);
  for (int m = 1; m <= steps; ++m) {
    for (Index i = 0; i < k; ++i)
      rhs[i] = tau * (spec.lambda * u.values[i] - spec.F(u.values[i]));
    if (metric == AcMetric::Standard)
      rhs += u.values;
    else
      rhs += gamma_apply(u).values;
    u.values = solver.apply(rhs);
    const double envelope = u0_inf * std::exp(spec.lambda * (m * tau));
    if (norm_inf(u) > 10.0 * envelope + 1e-12)
      throw std::runtime_error("ac_flow: state escaped the comparison-principle envelope");
    record(m);
  }
  return traj;
}

inline std::vector<double> uniform_sample_times(double T, int count = 64) {
  std::vector<double> t;
  for (int i = 0; i <= count; ++i) t.push_back(T * double(i) / double(count));
  return t;
}

/// Fine-grid stand-in for the continuum flow; same scheme, finer resolution.
inline Trajectory continuum_reference(const Func1D& u0, const PotentialSpec& spec, double T,
                                      Index k_ref, double tau_ref,
                                      const std::vector<double>& sample_times) {
  TorusGrid fine(1, k_ref);
  return ac_flow(nodal_interpolate(u0, fine), spec, T, tau_ref, AcMetric::Standard, sample_times);
}

/// High-accuracy RK4 for the spatially constant case c' = lambda c - F(c).
inline double scalar_reaction_ode(double c0, const PotentialSpec& spec, double T,
                                  double dt = 1e-6) {
  auto f = [&](double c) { return spec.lambda * c - spec.F(c); };
  double c = c0, t = 0.0;
  while (t < T - 1e-15) {
    const double step = std::min(dt, T - t);
    const double k1 = f(c);
    const double k2 = f(c + 0.5 * step * k1);
    const double k3 = f(c + 0.5 * step * k2);
    const double k4 = f(c + step * k3);
    c += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += step;
  }
  return c;
}

}  // namespace torusflow
