#include "torusflow/suites.hpp"

#include "torusflow/ac_flow.hpp"
#include "torusflow/discrete_calculus.hpp"
#include "torusflow/gamma_ops.hpp"
#include "torusflow/interp1d.hpp"
#include "torusflow/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

namespace torusflow {
namespace {

GridFunction random_grid_function(const TorusGrid& grid, CounterRng& rng) {
  GridFunction u(grid);
  for (Index i = 0; i < u.size(); ++i) u.values[i] = rng.next_symmetric();
  return u;
}

/// Random low-mode trigonometric field: sum of three separable products. Cell
/// averages have closed forms, giving an exact oracle for the projection.
struct TrigField {
  struct Term {
    double amp;
    std::vector<int> mode;  // 1 or 2 per axis
    std::vector<bool> use_sin;
  };
  std::vector<Term> terms;

  double operator()(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double prod = t.amp;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double arg = 2.0 * M_PI * t.mode[i] * x[i];
        prod *= t.use_sin[i] ? std::sin(arg) : std::cos(arg);
      }
      acc += prod;
    }
    return acc;
  }

  ScalarField field() const {
    TrigField copy = *this;
    return [copy](const std::vector<double>& x) { return copy(x); };
  }

  /// Exact average over the half-open cell centered at node z.
  double exact_cell_average(const TorusGrid& grid, Index z) const {
    const auto c = grid.node_point(z);
    const double h = grid.h();
    double acc = 0.0;
    for (const auto& t : terms) {
      double prod = t.amp;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double om = 2.0 * M_PI * t.mode[i];
        const double a = c[i] - 0.5 * h, b = c[i] + 0.5 * h;
        const double integral = t.use_sin[i] ? (std::cos(om * a) - std::cos(om * b)) / om
                                             : (std::sin(om * b) - std::sin(om * a)) / om;
        prod *= integral / h;
      }
      acc += prod;
    }
    return acc;
  }
};

TrigField random_trig_field(int n, CounterRng& rng) {
  TrigField f;
  for (int t = 0; t < 3; ++t) {
    TrigField::Term tm;
    tm.amp = rng.next_symmetric();
    for (int i = 0; i < n; ++i) {
      tm.mode.push_back(1 + int(rng.next_u64() % 2));
      tm.use_sin.push_back(rng.next_u64() % 2 == 0);
    }
    f.terms.push_back(std::move(tm));
  }
  return f;
}

double continuum_l2_norm(const ScalarField& w, const TorusGrid& grid, int order) {
  PiecewiseConstantField zero{grid, Eigen::VectorXd::Zero(grid.num_nodes())};
  return l2_distance_pc(zero, w, order);
}

struct TVField {
  std::string name;
  int n;
  ScalarField w;
  double tv;  // exact anisotropic total variation
};

std::vector<TVField> tv_field_set() {
  auto one_d = [](std::function<double(double)> f) {
    return [f](const std::vector<double>& x) { return f(x[0]); };
  };
  std::vector<TVField> out;
  out.push_back({"sin1", 1, one_d([](double x) { return std::sin(2 * M_PI * x); }), 4.0});
  out.push_back({"cos1", 1, one_d([](double x) { return std::cos(2 * M_PI * x); }), 4.0});
  const double amp = std::sqrt(0.5 * 0.5 + 0.3 * 0.3);
  out.push_back({"mix1", 1,
                 one_d([](double x) { return 0.5 * std::sin(2 * M_PI * x) + 0.3 * std::cos(2 * M_PI * x); }),
                 4.0 * amp});
  out.push_back({"sin2", 1, one_d([](double x) { return std::sin(4 * M_PI * x); }), 8.0});
  out.push_back({"step4", 1, one_d([](double x) { return std::tanh(4.0 * std::cos(2 * M_PI * x)); }),
                 4.0 * std::tanh(4.0)});
  out.push_back({"step6", 1, one_d([](double x) { return std::tanh(6.0 * std::sin(2 * M_PI * x)); }),
                 4.0 * std::tanh(6.0)});
  out.push_back({"plane-x", 2, [](const std::vector<double>& x) { return std::sin(2 * M_PI * x[0]); }, 4.0});
  out.push_back({"plane-y", 2, [](const std::vector<double>& x) { return std::cos(2 * M_PI * x[1]); }, 4.0});
  out.push_back({"cross", 2,
                 [](const std::vector<double>& x) {
                   return std::sin(2 * M_PI * x[0]) + std::cos(2 * M_PI * x[1]);
                 },
                 8.0});
  out.push_back({"step-2d", 2,
                 [](const std::vector<double>& x) { return std::tanh(3.0 * std::cos(2 * M_PI * x[0])); },
                 4.0 * std::tanh(3.0)});
  return out;
}

/// 1-D smooth test profiles with exact first/second derivative L^2 norms.
struct Profile1D {
  std::string name;
  Func1D w, dw;
  double d1_norm_sq;  // ||w'||^2
  double d2_norm_sq;  // ||w''||^2
};

std::vector<Profile1D> trig_profiles() {
  std::vector<Profile1D> out;
  auto add_mode = [&](const std::string& name, double a, int m, bool use_sin) {
    const double om = 2.0 * M_PI * m;
    Func1D w, dw;
    if (use_sin) {
      w = [a, om](double x) { return a * std::sin(om * x); };
      dw = [a, om](double x) { return a * om * std::cos(om * x); };
    } else {
      w = [a, om](double x) { return a * std::cos(om * x); };
      dw = [a, om](double x) { return -a * om * std::sin(om * x); };
    }
    // ||(a trig(om x))^(j)||^2 = a^2 om^(2j) / 2 on the unit torus
    out.push_back({name, w, dw, 0.5 * a * a * om * om, 0.5 * a * a * om * om * om * om});
  };
  add_mode("sin1", 1.0, 1, true);
  add_mode("cos1", 1.0, 1, false);
  add_mode("sin2", 0.7, 2, true);
  add_mode("cos2", 0.5, 2, false);
  add_mode("sin3", 0.3, 3, true);
  add_mode("cos3", 0.4, 3, false);
  // two-mode combinations: cross terms integrate to zero, norms add
  out.push_back({"mix12",
                 [](double x) { return std::sin(2 * M_PI * x) + 0.5 * std::cos(4 * M_PI * x); },
                 [](double x) {
                   return 2 * M_PI * std::cos(2 * M_PI * x) - 2 * M_PI * std::sin(4 * M_PI * x);
                 },
                 0.5 * std::pow(2 * M_PI, 2) + 0.5 * 0.25 * std::pow(4 * M_PI, 2),
                 0.5 * std::pow(2 * M_PI, 4) + 0.5 * 0.25 * std::pow(4 * M_PI, 4)});
  out.push_back({"mix13",
                 [](double x) { return 0.8 * std::cos(2 * M_PI * x) + 0.2 * std::sin(6 * M_PI * x); },
                 [](double x) {
                   return -0.8 * 2 * M_PI * std::sin(2 * M_PI * x) +
                          0.2 * 6 * M_PI * std::cos(6 * M_PI * x);
                 },
                 0.5 * 0.64 * std::pow(2 * M_PI, 2) + 0.5 * 0.04 * std::pow(6 * M_PI, 2),
                 0.5 * 0.64 * std::pow(2 * M_PI, 4) + 0.5 * 0.04 * std::pow(6 * M_PI, 4)});
  return out;
}

/// Per-interval Gauss quadrature of f over the torus on a k-interval mesh.
double integrate_torus(const Func1D& f, int k, int order = 16) {
  const GaussLegendre rule(order);
  double acc = 0.0;
  for (int i = 0; i < k; ++i)
    acc += rule.integrate(f, double(i) / k, double(i + 1) / k);
  return acc;
}

}  // namespace

Report run_operators_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "operators";

  const std::vector<int> dims = {1, 2, 3};
  const std::vector<int> ks = {2, 4, 8};

  double worst_roundtrip = 0.0, worst_isometry = 0.0, worst_tv = 0.0;
  double worst_sandwich = 0.0, worst_gap = 0.0, worst_l4 = 0.0;
  int pool_size = 0;
  CounterRng rng(cfg.seed, 1);
  while (pool_size < 100) {
    for (int n : dims) {
      for (int k : ks) {
        if (pool_size >= 100) break;
        TorusGrid grid(n, k);
        GridFunction u = random_grid_function(grid, rng);
        ++pool_size;

        // p_h i_h = id, exact
        GridFunction back = project_pc(embed_pc(u), grid);
        worst_roundtrip = std::max(worst_roundtrip, (back.values - u.values).cwiseAbs().maxCoeff());

        // i_h isometry
        worst_isometry = std::max(
            worst_isometry, std::abs(inner_l2_pc(embed_pc(u), embed_pc(u)) - inner_h(u, u)));

        // embedded jump sum equals the edge-sum energy
        worst_tv = std::max(worst_tv, std::abs(continuum_tv_pc(embed_pc(u)) - tv_h(u)));

        if (n == 1) {
          const double nn = inner_h(u, u);
          const double ind = induced_inner(u, u);
          worst_sandwich = std::max(worst_sandwich, std::max(nn / 3.0 - ind, ind - nn));
          const double gap = nn - pwl_l2_norm_sq(u);
          // k = 2: one deduplicated graph edge carries two interpolation
          // segments, so the edge-sum form of the identity gains a factor 2
          const double factor = (k == 2) ? 2.0 : 1.0;
          worst_gap = std::max(
              worst_gap, std::abs(gap - factor * grid.h() * grid.h() / 6.0 * dirichlet_form(u)));
          const double l4h = l4h_norm4(u), l4 = pwl_l4_norm4(u);
          worst_l4 = std::max(worst_l4, std::max(l4h / 5.0 - l4, l4 - l4h));
        }
      }
    }
  }
  rep.add("operators.project-embed-roundtrip", anchors::kProjectEmbedIdentity, worst_roundtrip, 1e-12);
  rep.add("operators.embed-isometry", anchors::kEmbedIsometry, worst_isometry, 1e-12);
  rep.add("operators.embedded-tv", anchors::kEmbeddedTV, worst_tv, 1e-12);
  rep.add("operators.inner-sandwich", anchors::kInnerSandwich, worst_sandwich, 1e-13);
  rep.add("operators.norm-gap", anchors::kNormGapIdentity, worst_gap, 1e-13);
  rep.add("operators.l4-sandwich", anchors::kL4Sandwich, worst_l4, 1e-13);

  // Pythagoras + per-cell mass preservation against smooth random fields
  double worst_pyth = 0.0, worst_mass = 0.0;
  CounterRng rng2(cfg.seed, 2);
  for (int n : dims) {
    for (int k : ks) {
      TorusGrid grid(n, k);
      for (int rep_i = 0; rep_i < 2; ++rep_i) {
        TrigField tf = random_trig_field(n, rng2);
        ScalarField w = tf.field();
        GridFunction p16 = project_pc(w, grid, 16);
        // per-cell mass against the closed-form cell averages
        for (Index z = 0; z < grid.num_nodes(); ++z)
          worst_mass = std::max(worst_mass, grid.cell_measure() *
                                                std::abs(p16.values[z] -
                                                         tf.exact_cell_average(grid, z)));

        const double wn = continuum_l2_norm(w, grid, 16);
        const double resid = l2_distance_pc(embed_pc(p16), w, 16);
        const double pn2 = inner_l2_pc(embed_pc(p16), embed_pc(p16));
        worst_pyth = std::max(worst_pyth, std::abs(wn * wn - resid * resid - pn2));
      }
    }
  }
  rep.add("operators.pythagoras", anchors::kPythagoras, worst_pyth, 1e-12);
  rep.add("operators.cell-mass", anchors::kCellMass, worst_mass, 1e-12);

  // cell-average projection does not increase anisotropic TV
  for (const auto& f : tv_field_set()) {
    const int k = (f.n == 1) ? 16 : 8;
    TorusGrid grid(f.n, k);
    GridFunction p = project_pc(f.w, grid, 20);
    rep.add("operators.tv-projection." + f.name, anchors::kTVProjectionBound, tv_h(p),
            f.tv + 1e-8, k, grid.h());
  }
  return rep;
}

Report run_gamma_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "gamma";

  // spectrum vs dense symmetric eigensolver
  double worst_spec = 0.0;
  for (int k : {2, 3, 4, 8, 16, 32, 64}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma_matrix(k));
    Eigen::VectorXd dense = es.eigenvalues();
    Eigen::VectorXd closed = gamma_spectrum(k);
    std::sort(closed.data(), closed.data() + k);
    worst_spec = std::max(worst_spec, (dense - closed).cwiseAbs().maxCoeff());
  }
  rep.add("gamma.spectrum-vs-dense", anchors::kGammaSpectrum, worst_spec, 1e-12);

  double worst_pos = 0.0, worst_coer = 0.0, worst_shift = 0.0, worst_solve = 0.0;
  CounterRng rng(cfg.seed, 3);
  for (int k : {3, 4, 5, 8, 16, 64}) {
    TorusGrid grid(1, k);
    for (int rep_i = 0; rep_i < 5; ++rep_i) {
      GridFunction u = random_grid_function(grid, rng);
      const double h = grid.h();

      GridFunction gu = gamma_apply(u);
      double lhs = inner_h(gu, u) - inner_h(u, u) / 3.0;
      double rhs = 0.0;
      for (int i = 0; i < k; ++i) {
        const double s = u.values[i] + u.values[(i + 1) % k];
        rhs += s * s;
      }
      rhs *= h / 6.0;
      worst_pos = std::max(worst_pos, std::abs(lhs - rhs));

      EdgeField gr = graph_gradient(u), grg = graph_gradient(gu);
      worst_coer = std::max(worst_coer, edge_norm_sq(gr) / 3.0 - edge_inner(gr, grg));

      for (const GridFunction& sh : {shift_plus(u), shift_minus(u)}) {
        GridFunction d(grid, u.values - sh.values);
        worst_shift = std::max(worst_shift, std::abs(inner_h(d, d) - h * h * edge_norm_sq(gr)));
      }

      GridFunction s1 = gamma_solve(gu);
      worst_solve = std::max(worst_solve, (s1.values - u.values).cwiseAbs().maxCoeff());
      GridFunction s2 = gamma_solve_dense(gu);
      worst_solve = std::max(worst_solve, (s2.values - u.values).cwiseAbs().maxCoeff());
    }
  }
  rep.add("gamma.positive-definite-identity", anchors::kGammaPosDef, worst_pos, 1e-12);
  rep.add("gamma.gradient-coercivity", anchors::kGammaCoercivity, worst_coer, 1e-12);
  rep.add("gamma.shift-gradient-identity", anchors::kShiftGradient, worst_shift, 1e-12);
  rep.add("gamma.solve-roundtrip", anchors::kGammaSpectrum, worst_solve, 1e-12);

  // the two exponential formulas agree entrywise
  double worst_exp = 0.0;
  for (int k : {2, 3, 4, 8, 16}) {
    for (double x = -2.0; x <= 2.0 + 1e-9; x += 0.5) {
      worst_exp = std::max(worst_exp,
                           (gamma_exp(x, k) - gamma_exp_series(x, k)).cwiseAbs().maxCoeff());
    }
  }
  rep.add("gamma.exp-formula-agreement", anchors::kGammaExp, worst_exp, 1e-10);

  double worst_sg = 0.0;
  for (int k : {4, 8, 16}) {
    const Eigen::MatrixXd id_err =
        gamma_exp(0.0, k) - Eigen::MatrixXd::Identity(k, k);
    worst_sg = std::max(worst_sg, id_err.cwiseAbs().maxCoeff());
    for (auto [x, y] : {std::pair{0.5, 0.7}, {-1.0, 0.4}, {1.0, 1.0}}) {
      worst_sg = std::max(
          worst_sg,
          (gamma_exp(x, k) * gamma_exp(y, k) - gamma_exp(x + y, k)).cwiseAbs().maxCoeff());
    }
  }
  rep.add("gamma.semigroup", anchors::kGammaSemigroup, worst_sg, 1e-9);
  return rep;
}

Report run_interp_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "interp";
  const auto profiles = trig_profiles();
  const double stab_const = 4.0 * std::sqrt(3.0) / M_PI + 2.0;

  double worst_stab = 0.0;   // max ratio ||(P_bar w)'|| / (C ||w'||)
  double worst_er = 0.0;     // max ratio of estimate LHS / RHS
  for (const auto& pr : profiles) {
    const int k = 16;
    TorusGrid grid(1, k);
    const double h = grid.h();

    GridFunction p = l2_project(pr.w, grid, 12);
    worst_stab = std::max(
        worst_stab, std::sqrt(dirichlet_form(p)) / (stab_const * std::sqrt(pr.d1_norm_sq)));

    GridFunction v = nodal_interpolate(pr.w, grid);
    PiecewiseLinearField lw = lin_embed(v);
    const double e2 = integrate_torus(
        [&](double x) { const double d = pr.w(x) - lw(x); return d * d; }, k, 16);
    double de2 = 0.0;
    {
      const GaussLegendre rule(16);
      for (int i = 0; i < k; ++i) {
        const double slope = lw.slope(i);
        de2 += rule.integrate(
            [&](double x) { const double d = pr.dw(x) - slope; return d * d; },
            i * h, (i + 1) * h);
      }
    }
    worst_er = std::max(worst_er, e2 / (std::pow(2.0 * h / M_PI, 2) * pr.d1_norm_sq));
    worst_er = std::max(worst_er, e2 / (std::pow(h / M_PI, 4) * pr.d2_norm_sq));
    worst_er = std::max(worst_er, de2 / (h * h / 3.0 * pr.d2_norm_sq));
    worst_er = std::max(worst_er, dirichlet_form(v) / (12.0 / (h * h) * pwl_l2_norm_sq(v)));
  }
  rep.add("interp.derivative-stability-ratio", anchors::kProjStability, worst_stab, 1.0);
  rep.add("interp.error-estimate-ratio", anchors::kInterpEstimates, worst_er, 1.0);

  // ||P_bar_h w - w||_{L^2} decreases under refinement
  bool monotone = true;
  double first = 0.0, last = 0.0;
  for (const auto& pr : {profiles[0], profiles[6]}) {
    double prev = -1.0;
    for (int k : {4, 8, 16, 32, 64}) {
      TorusGrid grid(1, k);
      GridFunction p = l2_project(pr.w, grid, 12);
      PiecewiseLinearField lp = lin_embed(p);
      const double err = std::sqrt(integrate_torus(
          [&](double x) { const double d = pr.w(x) - lp(x); return d * d; }, k, 16));
      if (k == 4) first = err;
      last = err;
      if (prev >= 0.0 && err > prev) monotone = false;
      prev = err;
    }
    rep.add("interp.projection-convergence." + pr.name, anchors::kProjConvergence, last,
            first / 8.0, 64, 1.0 / 64.0);
  }
  rep.add("interp.projection-monotone", anchors::kProjConvergence, monotone ? 0.0 : 1.0, 0.5);
  (void)cfg;
  return rep;
}

Report run_poincare_suite(const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "poincare";
  const double pi2 = M_PI * M_PI, pi4 = pi2 * pi2;

  auto min_eigs = [](int m) {
    const double dx = 1.0 / double(m + 1);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      A(i, i) = 2.0 / (dx * dx);
      if (i > 0) A(i, i - 1) = -1.0 / (dx * dx);
      if (i + 1 < m) A(i, i + 1) = -1.0 / (dx * dx);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es4(A * A);
    return std::pair{es2.eigenvalues()[0], es4.eigenvalues()[0]};
  };

  const auto [e2_100, e4_100] = min_eigs(100);
  const auto [e2_200, e4_200] = min_eigs(200);
  rep.add("poincare.order2.m200", anchors::kPoincare2, std::abs(e2_200 - pi2) / pi2, 1e-3, 200);
  rep.add("poincare.order4.m200", anchors::kPoincare4, std::abs(e4_200 - pi4) / pi4, 5e-3, 200);

  const double ratio2 = std::abs(e2_100 - pi2) / std::abs(e2_200 - pi2);
  const double ratio4 = std::abs(e4_100 - pi4) / std::abs(e4_200 - pi4);
  rep.add("poincare.richardson.order2", anchors::kPoincareRate, std::abs(ratio2 - 4.0), 0.5);
  rep.add("poincare.richardson.order4", anchors::kPoincareRate, std::abs(ratio4 - 4.0), 0.5);
  (void)cfg;
  return rep;
}

}  // namespace torusflow
