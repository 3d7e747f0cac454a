#include "torusflow/discrete_calculus.hpp"
#include "torusflow/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace torusflow;

namespace {
GridFunction spike4() {
  TorusGrid g(1, 4);
  GridFunction u(g);
  u.values << 1, 0, 0, 0;
  return u;
}

GridFunction random_u(const TorusGrid& g, CounterRng& rng) {
  GridFunction u(g);
  for (Index i = 0; i < u.size(); ++i) u.values[i] = rng.next_symmetric();
  return u;
}
}  // namespace

TEST_CASE("inner product and norms") {
  GridFunction u = spike4();
  CHECK(inner_h(u, u) == doctest::Approx(0.25).epsilon(1e-15));

  TorusGrid g2(2, 2);
  GridFunction a(g2), b(g2);
  a.values << 1, 2, 3, 4;
  b.values.setOnes();
  CHECK(inner_h(a, b) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(inner_h(b, b) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gradient, Laplacian, and summation by parts") {
  GridFunction u = spike4();
  EdgeField g = graph_gradient(u);
  CHECK(edge_norm_sq(g) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(dirichlet_form(u) == doctest::Approx(8.0).epsilon(1e-14));

  GridFunction lap = graph_laplacian(u);
  CHECK(lap.values[0] == doctest::Approx(-32.0));
  CHECK(lap.values[1] == doctest::Approx(16.0));
  CHECK(lap.values[2] == doctest::Approx(0.0));
  CHECK(lap.values[3] == doctest::Approx(16.0));
  CHECK(-inner_h(lap, u) == doctest::Approx(8.0).epsilon(1e-14));

  CounterRng rng(7);
  for (int n : {1, 2, 3}) {
    TorusGrid grid(n, 4);
    GridFunction a = random_u(grid, rng), b = random_u(grid, rng);
    const double lhs = -inner_h(graph_laplacian(a), b);
    const double mid = edge_inner(graph_gradient(a), graph_gradient(b));
    const double rhs = -inner_h(a, graph_laplacian(b));
    CHECK(lhs == doctest::Approx(mid).epsilon(1e-12));
    CHECK(mid == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("energies") {
  GridFunction u = spike4();
  CHECK(tv_h(u) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(dirichlet_h(u) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(potential_h(u, 1.0) == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
  CHECK_THROWS(potential_h(u, 0.0));

  TorusGrid g8(1, 8);
  GridFunction two(g8);
  for (Index i = 0; i < 4; ++i) two.values[i] = 1.0;
  CHECK(tv_h(two) == doctest::Approx(2.0).epsilon(1e-15));

  GridFunction zero(g8);
  CHECK(ac_h(zero, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  GridFunction well(g8, Eigen::VectorXd::Constant(8, -1.0));
  CHECK(ac_h(well, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("embedding is an isometry, projection inverts it") {
  CounterRng rng(11);
  for (int n : {1, 2, 3}) {
    for (int k : {2, 4, 8}) {
      TorusGrid grid(n, k);
      GridFunction u = random_u(grid, rng);
      PiecewiseConstantField f = embed_pc(u);
      CHECK(std::abs(inner_l2_pc(f, f) - inner_h(u, u)) <= 1e-13);
      GridFunction back = project_pc(f, grid);
      CHECK((back.values - u.values).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("cell averages of cosine on two cells") {
  TorusGrid g(1, 2);
  GridFunction p = project_pc(
      [](const std::vector<double>& x) { return std::cos(2 * M_PI * x[0]); }, g, 12);
  CHECK(p.values[0] == doctest::Approx(2.0 / M_PI).epsilon(1e-12));
  CHECK(p.values[1] == doctest::Approx(-2.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("jump-sum total variation matches the edge sum") {
  GridFunction u = spike4();
  CHECK(continuum_tv_pc(embed_pc(u)) == doctest::Approx(tv_h(u)).epsilon(1e-14));

  TorusGrid g2(2, 4);
  GridFunction ind(g2);
  ind.values[g2.flat_index({1, 2})] = 1.0;
  CHECK(continuum_tv_pc(embed_pc(ind)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tv_h(ind) == doctest::Approx(1.0).epsilon(1e-14));

  CounterRng rng(3);
  for (int n : {1, 2, 3}) {
    for (int k : {2, 4, 8}) {
      TorusGrid grid(n, k);
      GridFunction u2 = random_u(grid, rng);
      CHECK(std::abs(continuum_tv_pc(embed_pc(u2)) - tv_h(u2)) <= 1e-12);
    }
  }
}

TEST_CASE("Pythagoras for the cell-average projection") {
  TorusGrid g(1, 4);
  auto w = [](const std::vector<double>& x) { return std::sin(2 * M_PI * x[0]) + 0.3; };
  GridFunction p = project_pc(w, g, 16);
  PiecewiseConstantField zero{g, Eigen::VectorXd::Zero(4)};
  const double wn = l2_distance_pc(zero, w, 16);
  const double resid = l2_distance_pc(embed_pc(p), w, 16);
  const double pn2 = inner_l2_pc(embed_pc(p), embed_pc(p));
  CHECK(wn * wn == doctest::Approx(resid * resid + pn2).epsilon(1e-13));
}

TEST_CASE("exact projection of a finer piecewise-constant field") {
  TorusGrid fine(1, 8), coarse(1, 4);
  CounterRng rng(5);
  GridFunction uf = random_u(fine, rng);
  GridFunction pc = project_pc(embed_pc(uf), coarse);
  // each coarse cell overlaps one full fine cell and two halves
  for (Index m = 0; m < 4; ++m) {
    const double expected = 0.25 * uf.values[(2 * m + 7) % 8] + 0.5 * uf.values[2 * m] +
                            0.25 * uf.values[2 * m + 1];
    CHECK(pc.values[m] == doctest::Approx(expected).epsilon(1e-14));
  }
}
