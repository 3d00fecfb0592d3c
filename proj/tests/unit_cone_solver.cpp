#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tiltsocp/cone_solver.hpp"
#include "tiltsocp/lorentz.hpp"
#include "tiltsocp/problem.hpp"

using namespace tiltsocp;
using testutil::vec;

namespace {

MultiplierSlice example_slice() {
  const ProblemInstance inst = testutil::load("example51.json");
  return build_slice(inst.J(), -inst.grad_f());
}

}  // namespace

TEST_CASE("slice of the reference instance") {
  const MultiplierSlice s = example_slice();
  REQUIRE_FALSE(s.empty);
  CHECK((s.offset - vec({0, 0, 1})).norm() < 1e-14);
  REQUIRE(s.dim() == 2);
  CHECK((s.basis.transpose() * s.basis - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-14);
  CHECK(s.basis.row(2).norm() < 1e-14);
}

TEST_CASE("slice affine constraint and emptiness") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd J = testutil::gaussian(rng, 4, 2);
    const Eigen::VectorXd c = J.transpose() * testutil::gaussian(rng, 4);
    const MultiplierSlice s = build_slice(J, c);
    REQUIRE_FALSE(s.empty);
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXd l = s.point(testutil::gaussian(rng, s.dim()));
      CHECK((J.transpose() * l - c).norm() <= 1e-9 * (1 + c.norm()));
    }
    CHECK(std::abs((s.basis.transpose() * s.offset).norm()) < 1e-12);
  }
  // J^T injective on R^2 only through its first column: c outside the range.
  Eigen::MatrixXd J(2, 2);
  J << 1, 0, 0, 0;
  CHECK(build_slice(J.transpose(), vec({0, 1})).empty);
  const MultiplierSlice zero = build_slice(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3));
  CHECK(zero.dim() == 0);
  CHECK(zero.offset.norm() == 0);
}

TEST_CASE("closed form directional maximizers") {
  const MultiplierSlice s = example_slice();
  const double r15 = std::sqrt(15.0), r3 = std::sqrt(3.0);
  ConeLPResult a = maximize_linear(s, vec({1, 0.25, 0.5}));
  REQUIRE(a.status == LPStatus::Optimal);
  CHECK((a.argmax - vec({-4 / r15, 1 / r15, 1})).norm() < 1e-8);
  CHECK(a.active == ArgmaxKind::BoundaryRay);
  ConeLPResult b = maximize_linear(s, vec({1, 0.5, 0.5}));
  REQUIRE(b.status == LPStatus::Optimal);
  CHECK((b.argmax - vec({-2 / r3, 1 / r3, 1})).norm() < 1e-8);
  ConeLPResult z = maximize_linear(s, vec({0, 0, 0}));
  REQUIRE(z.status == LPStatus::Optimal);
  CHECK(z.value == doctest::Approx(0).scale(1));
  CHECK(z.face);
  CHECK(maximize_linear(s, vec({-1, 0, 0})).status == LPStatus::Unbounded);
}

TEST_CASE("feasibility") {
  const FeasibilityResult f = feasibility(example_slice());
  REQUIRE(f.feasible);
  CHECK(dual_contains(f.point, 1e-12));
  CHECK(std::abs(f.point(2) - 1) < 1e-12);
  MultiplierSlice e;
  e.empty = true;
  e.offset = Eigen::VectorXd::Zero(3);
  e.basis = Eigen::MatrixXd::Zero(3, 0);
  CHECK_FALSE(feasibility(e).feasible);
  const FeasibilityResult z = feasibility(build_slice(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3)));
  REQUIRE(z.feasible);
  CHECK(z.point.norm() == 0);
  // The slice {(a, 1, 0)} meets Q* only on its boundary.
  Eigen::MatrixXd dir(3, 1);
  dir << 1, 0, 0;
  const MultiplierSlice touch = make_slice(vec({0, 1, 0}), dir);
  const FeasibilityResult t = feasibility(touch);
  CHECK(t.feasible);
  CHECK(dual_contains(t.point, 1e-9));
}

TEST_CASE("returned maximizers are feasible and bounded slices are optimal") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const int p = 2 + t % 3;
    const int d = 1 + t % 2;
    const Eigen::VectorXd inner = testutil::random_dual(rng, p);
    const MultiplierSlice s = make_slice(inner, testutil::gaussian(rng, p, d));
    const Eigen::VectorXd obj = testutil::gaussian(rng, p);
    const ConeLPResult r = maximize_linear(s, obj, 5.0 + inner.norm());
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(dual_contains(r.argmax, 1e-8));
    const Eigen::VectorXd resid = r.argmax - s.offset - s.basis * (s.basis.transpose() * (r.argmax - s.offset));
    CHECK(resid.norm() <= 1e-8);
    CHECK(std::abs(r.value - obj.dot(r.argmax)) <= 1e-8 * (1 + std::abs(r.value)));
  }
}

TEST_CASE("out-of-kernel probe") {
  const ProbeResult ex = out_of_kernel_probe(testutil::load("example51.json"));
  CHECK_FALSE(ex.out_of_kernel);
  const ProblemInstance id = testutil::identity_instance(Eigen::MatrixXd::Identity(3, 3), vec({1, -1, 0}));
  const ProbeResult p = out_of_kernel_probe(id);
  REQUIRE(p.out_of_kernel);
  CHECK((p.u_bar - vec({1, 1, 0}).normalized()).norm() < 1e-8);
  CHECK(cone_contains(id.J() * p.u_bar, 1e-8));
  CHECK(std::abs(id.grad_f().dot(p.u_bar)) < 1e-8);

  std::vector<PolyFunc> g(3, PolyFunc(2));
  g[1] = PolyFunc(2, {{1.0, {2, 0}}});
  const ProblemInstance flat = make_instance(PolyFunc(2), g, Eigen::VectorXd::Zero(2), 1.0);
  CHECK_FALSE(out_of_kernel_probe(flat).out_of_kernel);
}
