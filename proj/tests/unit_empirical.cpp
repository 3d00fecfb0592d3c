#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "test_util.hpp"
#include "tiltsocp/empirical.hpp"
#include "tiltsocp/lorentz.hpp"

using namespace tiltsocp;
using testutil::vec;

namespace {

double violation(const ProblemInstance& inst, const Eigen::VectorXd& x) {
  const Eigen::VectorXd q = inst.g_value(x);
  return (project_onto_cone(q) - q).norm();
}

}  // namespace

TEST_CASE("restoration reaches the feasible set") {
  const ProblemInstance ex = testutil::load("example51.json");
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd x = testutil::gaussian(rng, 3, 0.05);
    const RestoreResult r = restore_feasibility(ex, x);
    CHECK(r.iterations <= 50);
    if (r.converged) CHECK(violation(ex, r.x) <= 1e-7);
  }
}

TEST_CASE("tilted solutions on the identity instance match the projection") {
  const ProblemInstance ok = testutil::load("identity_ok.json");
  const Eigen::VectorXd c = vec({1, -1, 0});
  CHECK(solve_tilted(ok, Eigen::VectorXd::Zero(3), 0.1).x.norm() < 1e-6);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd v = testutil::gaussian(rng, 3, 1e-3);
    const TiltedSolution s = solve_tilted(ok, v, 0.1);
    CHECK((s.x - project_onto_cone(v - c)).norm() < 1e-6);
    CHECK(s.violation <= 1e-7);
  }
}

TEST_CASE("tilted solutions respect the coordinate reflection") {
  const ProblemInstance ex = testutil::load("example51.json");
  const SeedCloud cloud = make_seed_cloud(ex, 0.1, 0);
  const Eigen::DiagonalMatrix<double, 3> R(-1, -1, 1);
  for (const Eigen::VectorXd& v : {vec({1e-3, 3e-4, 0}), vec({-2e-4, 8e-4, 0}), vec({5e-4, 5e-4, 2e-4})}) {
    Eigen::VectorXd rv = R * v;
    const TiltedSolution a = solve_tilted(ex, v, cloud), b = solve_tilted(ex, rv, cloud);
    CHECK((Eigen::VectorXd(R * a.x) - b.x).norm() <= 1e-6);
    CHECK(a.violation <= 1e-7);
  }
}

TEST_CASE("both minimizing branches of the reference instance tie at the axis tilt") {
  const ProblemInstance ex = testutil::load("example51.json");
  const double tau = 1e-3;
  const TiltedSolution s = solve_tilted(ex, vec({tau, 0, 0}), 0.1);
  // min_r r^2 phi(d) - tau r <e0, d> scales with tau^2.
  CHECK(s.value == doctest::Approx(oracle::kTiltedBranchValue * tau * tau).epsilon(1e-3));
}

TEST_CASE("tilt experiments") {
  const ProblemInstance ok = testutil::load("identity_ok.json");
  const TiltExperiment e = empirical_tilt(ok, 0.1, 1e-3, 11, 1.0);
  CHECK(e.modulus_estimate == doctest::Approx(oracle::kIdentityModulus).epsilon(1e-4));
  CHECK_FALSE(e.unstable);
  CHECK(e.max_violation <= 1e-7);
  CHECK(e.base_deviation <= 1e-6);
  CHECK(e.tilt_grid.size() == e.solutions.size());
  for (const Eigen::VectorXd& x : e.solutions) CHECK((x - ok.x_base).norm() <= 0.1 + 1e-12);

  const TiltExperiment single = empirical_tilt(ok, 0.1, 1e-3, 1);
  CHECK(single.tilt_grid.size() == 1);
  CHECK(single.modulus_estimate == 0);

  const TiltExperiment bad = empirical_tilt(testutil::load("identity_bad.json"), 0.1, 1e-3);
  CHECK(bad.unstable);
}

TEST_CASE("tilt grid shape") {
  const auto g = tilt_grid(3, 1e-3, 11);
  CHECK(g.front().norm() == 0);
  for (const Eigen::VectorXd& v : g) CHECK(v.norm() <= 1e-3 + 1e-15);
  // Axes and the six diagonals, ten nonzero points each, plus the origin.
  CHECK(g.size() == 1 + 9 * 10);
}

TEST_CASE("neighborhood falsifier") {
  const NeighborhoodResult ok = neighborhood_falsify(testutil::load("identity_ok.json"), 2.0, 1e-2, 10000);
  CHECK_FALSE(ok.witness.has_value());
  CHECK(ok.evaluated > 0);
  const NeighborhoodResult bad = neighborhood_falsify(testutil::load("identity_bad.json"), 1.0, 1e-2, 10000);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->value < 1.0);
  CHECK(bad.witness->x.norm() <= 1e-2 + 1e-12);
  CHECK(bad.witness->x_star.norm() <= 1e-2 + 1e-12);
}

TEST_CASE("neighborhood ladder") {
  const auto steps = neighborhood_ladder(testutil::load("identity_ok.json"), 600);
  REQUIRE(steps.size() == 3);
  for (const LadderStep& s : steps) {
    CHECK(s.min_value >= 1 - 1e-9);
    CHECK(s.sup_inverse == doctest::Approx(1 / s.min_value));
  }
}

TEST_CASE("metric subregularity falsifier") {
  const MscqResult ex = mscq_falsify(testutil::load("example51.json"), 500);
  CHECK_FALSE(ex.witness.has_value());
  CHECK(mscq_falsify(testutil::load("identity_ok.json"), 2000).witness == std::nullopt);
  const MscqResult bad = mscq_falsify(testutil::load("mscq_bad.json"), 200);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->dist_x_lower >= 0.5 * bad.witness->dist_g);
  // The only feasible point is 0, so the true distance is |x|.
  CHECK(bad.witness->dist_x_lower <= std::abs(bad.witness->x(0)) + 1e-12);
}
