#include "torusflow/ac_flow.hpp"

#include <doctest.h>

#include <cmath>

using namespace torusflow;

TEST_CASE("reaction data validation and Lipschitz constant") {
  CHECK_THROWS(PotentialSpec::canonical(0.0, 2.0));
  CHECK_THROWS(PotentialSpec::canonical(1.0, 1.0));
  PotentialSpec spec = PotentialSpec::canonical(1.0, 2.0);
  CHECK(spec.F(0.0) == doctest::Approx(0.0));
  CHECK(spec.F(1.0) == doctest::Approx(2.0));   // alpha*0 + lambda
  CHECK(spec.Fprime(0.0) == doctest::Approx(1.0));

  // envelope radius R = |u0| e^{lambda T}; sup F' = alpha (3 R^2 - 1) + lambda
  const double R = 0.5 * std::exp(2.0 * 1.0);
  CHECK(spec.reaction_lipschitz(0.5, 1.0) ==
        doctest::Approx(3.0 * R * R - 1.0 + 2.0).epsilon(1e-12));
}

TEST_CASE("the well bottoms and the origin are frozen") {
  PotentialSpec spec = PotentialSpec::canonical(1.0, 2.0);
  TorusGrid g(1, 16);
  for (double c : {1.0, -1.0, 0.0}) {
    GridFunction u0(g, Eigen::VectorXd::Constant(16, c));
    for (AcMetric metric : {AcMetric::Standard, AcMetric::GammaModified}) {
      Trajectory traj = ac_flow(u0, spec, 0.25, 1e-3, metric, {});
      CHECK((traj.states.back().values.array() - c).abs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("constant data reduces to the scalar reaction equation") {
  PotentialSpec spec = PotentialSpec::canonical(1.0, 2.0);
  TorusGrid g(1, 8);
  const double T = 0.5, tau = 1e-4;
  const double exact = scalar_reaction_ode(0.5, spec, T);
  for (AcMetric metric : {AcMetric::Standard, AcMetric::GammaModified}) {
    GridFunction u0(g, Eigen::VectorXd::Constant(8, 0.5));
    Trajectory traj = ac_flow(u0, spec, T, tau, metric, {});
    const Eigen::VectorXd& v = traj.states.back().values;
    CHECK((v.array() - v.mean()).abs().maxCoeff() <= 1e-12);  // stays constant
    CHECK(std::abs(v.mean() - exact) <= 50.0 * tau);
  }
}

TEST_CASE("growth stays inside the comparison envelope") {
  PotentialSpec spec = PotentialSpec::canonical(1.0, 2.0);
  TorusGrid g(1, 64);
  GridFunction u0 = nodal_interpolate([](double x) { return 0.8 * std::sin(2 * M_PI * x); }, g);
  const double T = 0.2, tau = 1e-4;
  Trajectory traj = ac_flow(u0, spec, T, tau, AcMetric::Standard, uniform_sample_times(T, 16));
  const double u0_inf = norm_inf(u0);
  for (std::size_t m = 0; m < traj.times.size(); ++m) {
    const double bound = u0_inf * std::exp(spec.lambda * traj.times[m]);
    CHECK(norm_inf(traj.states[m]) <= bound + 10.0 * tau);
  }
}

TEST_CASE("sample recording includes the endpoints and stays sorted") {
  PotentialSpec spec = PotentialSpec::canonical(1.0, 2.0);
  TorusGrid g(1, 8);
  GridFunction u0 = nodal_interpolate([](double x) { return 0.3 * std::cos(2 * M_PI * x); }, g);
  Trajectory traj = ac_flow(u0, spec, 0.1, 1e-3, AcMetric::Standard, {0.05, 0.02, 0.02});
  CHECK(traj.times.front() == doctest::Approx(0.0));
  CHECK(traj.times.back() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(traj.times.size() == 4);  // 0, 0.02, 0.05, 0.1 (duplicates dropped)
  for (std::size_t m = 1; m < traj.times.size(); ++m) CHECK(traj.times[m] > traj.times[m - 1]);
  CHECK((traj.states.front().values - u0.values).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("a non-dissipative reaction trips the envelope guard") {
  // F decreasing (invalid data): the state grows like e^{(lambda+10)t} and
  // must be rejected once it exceeds 10x the admissible envelope
  PotentialSpec bad;
  bad.alpha = 1.0;
  bad.lambda = 2.0;
  bad.F = [](double x) { return -10.0 * x; };
  bad.Fprime = [](double) { return -10.0; };
  TorusGrid g(1, 8);
  GridFunction u0(g, Eigen::VectorXd::Constant(8, 0.5));
  CHECK_THROWS(ac_flow(u0, bad, 0.5, 1e-3, AcMetric::Standard, {}));
}

TEST_CASE("argument validation") {
  PotentialSpec spec = PotentialSpec::canonical(1.0, 2.0);
  TorusGrid g(1, 8);
  GridFunction u0(g);
  CHECK_THROWS(ac_flow(u0, spec, 0.1, -1e-3, AcMetric::Standard, {}));
  CHECK_THROWS(ac_flow(GridFunction(TorusGrid(2, 8)), spec, 0.1, 1e-3, AcMetric::Standard, {}));
}

TEST_CASE("modified and standard metrics agree at first order in h") {
  PotentialSpec spec = PotentialSpec::canonical(1.0, 2.0);
  const double T = 0.25, tau = 1e-4;
  double prev = -1.0;
  for (int k : {16, 32, 64}) {
    TorusGrid g(1, k);
    GridFunction u0 = nodal_interpolate([](double x) { return 0.5 * std::sin(2 * M_PI * x); }, g);
    Trajectory a = ac_flow(u0, spec, T, tau, AcMetric::Standard, {});
    Trajectory b = ac_flow(u0, spec, T, tau, AcMetric::GammaModified, {});
    const double d = (a.states.back().values - b.states.back().values).cwiseAbs().maxCoeff();
    if (prev >= 0.0) CHECK(d <= 0.5 * prev);  // at least first-order shrinkage
    prev = d;
  }
}
