#include "torusflow/tv_flow.hpp"
#include "torusflow/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace torusflow;

namespace {
GridFunction two_plateau8() {
  TorusGrid g(1, 8);
  GridFunction u(g);
  for (Index i = 0; i < 4; ++i) u.values[i] = 1.0;
  return u;
}

GridFunction spike4() {
  TorusGrid g(1, 4);
  GridFunction u(g);
  u.values << 1, 0, 0, 0;
  return u;
}
}  // namespace

TEST_CASE("prox: constants are fixed points") {
  TorusGrid g(1, 8);
  GridFunction c(g, Eigen::VectorXd::Constant(8, 0.7));
  ProxResult r = tv_prox(c, 0.05, 1e-12);
  CHECK(r.converged);
  CHECK((r.u.values.array() - 0.7).abs().maxCoeff() <= 1e-12);
  CHECK_THROWS(tv_prox(c, -1.0, 1e-12));
  CHECK_THROWS(tv_prox(c, 0.05, 0.0));
}

TEST_CASE("prox: one implicit step matches the exact plateau motion") {
  GridFunction u0 = two_plateau8();
  const double tau = 0.01;
  ProxResult r = tv_prox(u0, tau, 1e-12);
  CHECK(r.converged);
  // plateaus of length 4 move with speed -/+ 2 / (4 h) = -/+ 4; the implicit
  // step is exact while no merge happens within tau
  PlateauOracle1D oracle(u0, 1.0);
  GridFunction want = oracle.sample(tau);
  CHECK((r.u.values - want.values).cwiseAbs().maxCoeff() <= 1e-5);
  CHECK(want.values[0] == doctest::Approx(1.0 - 4.0 * tau).epsilon(1e-13));
  CHECK(want.values[6] == doctest::Approx(4.0 * tau).epsilon(1e-13));
}

TEST_CASE("prox: a huge step flattens to the mean") {
  GridFunction u = spike4();
  ProxResult r = tv_prox(u, 10.0, 1e-12);
  CHECK(r.converged);
  CHECK((r.u.values.array() - 0.25).abs().maxCoeff() <= 1e-4);
}

TEST_CASE("prox preserves the mean") {
  CounterRng rng(61);
  for (int n : {1, 2}) {
    TorusGrid g(n, 8);
    GridFunction u(g);
    for (Index i = 0; i < u.size(); ++i) u.values[i] = rng.next_symmetric();
    ProxResult r = tv_prox(u, 0.02, 1e-10);
    CHECK(mean_value(r.u) == doctest::Approx(mean_value(u)).epsilon(1e-12));
  }
}

TEST_CASE("minimizing movements: bookkeeping and energy decay") {
  GridFunction u0 = two_plateau8();
  const double tau = 1.0 / 256.0;
  Trajectory traj = tv_flow_mm(u0, 0.25, tau, 1e-11);
  CHECK(traj.times.size() == 65);
  CHECK(traj.states.size() == 65);
  CHECK(traj.prox_converged);
  for (std::size_t m = 1; m < traj.energies.size(); ++m)
    CHECK(traj.energies[m] <= traj.energies[m - 1] + 1e-9);
  // by t = 1/8 the two plateaus have merged at the mean 1/2
  CHECK((traj.states.back().values.array() - 0.5).abs().maxCoeff() <= 1e-4);
}

TEST_CASE("oracle: two plateaus meet at t = 1/8") {
  GridFunction u0 = two_plateau8();
  PlateauOracle1D oracle(u0, 1.0);
  CHECK(oracle.event_count() == 1);
  GridFunction mid = oracle.sample(1.0 / 16.0);
  CHECK(mid.values[0] == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(mid.values[7] == doctest::Approx(0.25).epsilon(1e-13));
  GridFunction end = oracle.sample(0.5);
  CHECK((end.values.array() - 0.5).abs().maxCoeff() <= 1e-12);
  CHECK(oracle.energy(0.0) == doctest::Approx(2.0));
  CHECK(oracle.energy(1.0 / 16.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(oracle.energy(0.5) == doctest::Approx(0.0));
  // energy is 2(1 - 8t) until the merge, then zero
  CHECK(oracle.energy_integral(1.0 / 8.0) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
  CHECK(oracle.energy_integral(1.0) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("oracle: single-node spike vanishes at t = 3/32") {
  GridFunction u0 = spike4();
  PlateauOracle1D oracle(u0, 1.0);
  // spike falls at rate 8, the base rises at 8/3; they meet at height 1/4
  GridFunction mid = oracle.sample(3.0 / 64.0);
  CHECK(mid.values[0] == doctest::Approx(1.0 - 8.0 * 3.0 / 64.0).epsilon(1e-12));
  CHECK(mid.values[1] == doctest::Approx(8.0 / 3.0 * 3.0 / 64.0).epsilon(1e-12));
  GridFunction end = oracle.sample(3.0 / 32.0);
  CHECK((end.values.array() - 0.25).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("oracle: middle step of a staircase is initially stationary") {
  TorusGrid g(1, 6);
  GridFunction u0(g);
  u0.values << 0, 0, 1, 1, 2, 2;
  PlateauOracle1D oracle(u0, 1.0);
  const double t = 1e-3;
  GridFunction s = oracle.sample(t);
  CHECK(s.values[2] == doctest::Approx(1.0).epsilon(1e-12));      // one up, one down
  CHECK(s.values[0] == doctest::Approx(6.0 * t).epsilon(1e-10));  // both neighbors higher
  CHECK(s.values[4] == doctest::Approx(2.0 - 6.0 * t).epsilon(1e-10));
}

TEST_CASE("oracle: constants are stationary") {
  TorusGrid g(1, 5);
  GridFunction u0(g, Eigen::VectorXd::Constant(5, 1.3));
  PlateauOracle1D oracle(u0, 10.0);
  CHECK(oracle.event_count() == 0);
  CHECK((oracle.sample(7.0).values.array() - 1.3).abs().maxCoeff() <= 1e-15);
  CHECK(oracle.energy(7.0) == doctest::Approx(0.0));
}

TEST_CASE("scheme follows the oracle over several merges") {
  TorusGrid g(1, 16);
  GridFunction u0(g);
  u0.values << 0, 0, 1, 1, 1, 0.2, 0.2, 0.2, 0.9, 0.9, 0.1, 0.1, 0.1, 0.1, 0.6, 0.6;
  const double T = 0.1, tau = 1.0 / 1024.0, eps = 1e-11;
  Trajectory traj = tv_flow_mm(u0, T, tau, eps);
  PlateauOracle1D oracle(u0, T);
  double worst = 0.0;
  for (std::size_t m = 0; m < traj.times.size(); ++m) {
    GridFunction ref = oracle.sample(traj.times[m]);
    worst = std::max(worst, (traj.states[m].values - ref.values).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 10.0 * (tau + eps / tau) * (1.0 + T));
}
