#include "torusflow/gamma_ops.hpp"
#include "torusflow/interp1d.hpp"
#include "torusflow/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace torusflow;

namespace {
GridFunction random_u(const TorusGrid& g, CounterRng& rng) {
  GridFunction u(g);
  for (Index i = 0; i < u.size(); ++i) u.values[i] = rng.next_symmetric();
  return u;
}
}  // namespace

TEST_CASE("stencil application") {
  TorusGrid g(1, 4);
  GridFunction u(g);
  u.values << 1, 0, 0, 0;
  GridFunction v = gamma_apply(u);
  CHECK(v.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(v.values[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(v.values[2] == doctest::Approx(0.0));
  CHECK(v.values[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  GridFunction c(g, Eigen::VectorXd::Constant(4, 2.5));
  CHECK((gamma_apply(c).values.array() - 2.5).abs().maxCoeff() <= 1e-15);
  CHECK_THROWS(gamma_apply(GridFunction(TorusGrid(2, 4))));
}

TEST_CASE("solve: alternating mode on two nodes and random roundtrips") {
  TorusGrid g2(1, 2);
  GridFunction b(g2);
  b.values << 1, -1;
  GridFunction x = gamma_solve(b);
  CHECK(x.values[0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(x.values[1] == doctest::Approx(-3.0).epsilon(1e-13));

  CounterRng rng(17);
  for (int k : {3, 4, 8, 32}) {
    TorusGrid g(1, k);
    GridFunction u = random_u(g, rng);
    GridFunction r1 = gamma_solve(gamma_apply(u));
    CHECK((r1.values - u.values).cwiseAbs().maxCoeff() <= 1e-12);
    GridFunction r2 = gamma_solve_dense(gamma_apply(u));
    CHECK((r2.values - u.values).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("square root and the interpolation norm") {
  CounterRng rng(23);
  TorusGrid g(1, 8);
  GridFunction u = random_u(g, rng);
  GridFunction s = gamma_sqrt_apply(u);
  CHECK(inner_h(s, s) == doctest::Approx(inner_h(gamma_apply(u), u)).epsilon(1e-12));
  CHECK(inner_h(s, s) == doctest::Approx(pwl_l2_norm_sq(u)).epsilon(1e-12));
  GridFunction twice = gamma_sqrt_apply(s);
  CHECK((twice.values - gamma_apply(u).values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("commutation with the Laplacian") {
  CounterRng rng(29);
  TorusGrid g(1, 16);
  GridFunction u = random_u(g, rng);
  GridFunction a = gamma_apply(graph_laplacian(u));
  GridFunction b = graph_laplacian(gamma_apply(u));
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("product inequality") {
  CounterRng rng(31);
  for (int k : {2, 4, 16}) {
    TorusGrid g(1, k);
    GridFunction u = random_u(g, rng);
    const double q = inner_h(gamma_apply(u), u);
    const double nn = inner_h(u, u);
    CHECK(q >= nn / 3.0 - 1e-13);
    CHECK(q <= nn + 1e-13);
  }
}

TEST_CASE("exponential: closed-form 2x2 case") {
  Eigen::MatrixXd E = gamma_exp(1.0, 2);
  const double diag = 0.5 * (std::exp(1.0) + std::exp(1.0 / 3.0));
  const double off = 0.5 * (std::exp(1.0) - std::exp(1.0 / 3.0));
  CHECK(E(0, 0) == doctest::Approx(diag).epsilon(1e-13));
  CHECK(E(1, 1) == doctest::Approx(diag).epsilon(1e-13));
  CHECK(E(0, 1) == doctest::Approx(off).epsilon(1e-13));
  CHECK(E(1, 0) == doctest::Approx(off).epsilon(1e-13));
}

TEST_CASE("exponential: identity at zero, formula agreement, semigroup") {
  for (int k : {2, 3, 5, 8, 16}) {
    CHECK((gamma_exp(0.0, k) - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-12);
    for (double x : {-2.0, -1.0, 0.5, 2.0}) {
      CHECK((gamma_exp(x, k) - gamma_exp_series(x, k)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  for (int k : {4, 8}) {
    CHECK((gamma_exp(0.3, k) * gamma_exp(0.9, k) - gamma_exp(1.2, k)).cwiseAbs().maxCoeff() <=
          1e-9);
  }
  CHECK_THROWS(gamma_exp(std::nan(""), 4));
  CHECK_THROWS(gamma_exp(1.0, 1));
}
