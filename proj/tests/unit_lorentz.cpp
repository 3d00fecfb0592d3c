#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tiltsocp/errors.hpp"
#include "tiltsocp/lorentz.hpp"

using namespace tiltsocp;
using testutil::vec;

TEST_CASE("classification bands") {
  CHECK(classify(vec({0, 0, 0})) == ConeClass::Zero);
  CHECK(classify(vec({1e-10, 0, 0})) == ConeClass::Zero);
  CHECK(classify(vec({2, 1, 0})) == ConeClass::Interior);
  CHECK(classify(vec({1, 1, 0})) == ConeClass::BoundaryNonzero);
  CHECK(classify(vec({1, 1 + 5e-10, 0})) == ConeClass::BoundaryNonzero);
  CHECK(classify(vec({1, 2, 0})) == ConeClass::Outside);
  CHECK(classify(vec({-1, 0, 0})) == ConeClass::Outside);
}

TEST_CASE("hat is an involution") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd q = testutil::gaussian(rng, 4);
    CHECK(hat(hat(q)) == q);
  }
}

TEST_CASE("cone and dual membership") {
  CHECK(cone_contains(vec({1, 0, 0}), 0));
  CHECK(cone_contains(vec({0, 0, 0}), 0));
  CHECK_FALSE(cone_contains(vec({1, 1, 1}), 1e-9));
  const double s = std::sqrt(15.0);
  CHECK(dual_contains(vec({-4 / s, 1 / s, 1}), 1e-12));
  CHECK(dual_contains(vec({0, 0, 0}), 0));
  CHECK_FALSE(dual_contains(vec({1, 0, 0}), 1e-9));
}

TEST_CASE("self duality through hat") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd q = testutil::gaussian(rng, 3);
    CHECK(cone_contains(q, 0) == dual_contains(hat(q), 0));
  }
}

TEST_CASE("projection examples") {
  CHECK((project_onto_cone(vec({2, 1, 0})) - vec({2, 1, 0})).norm() == 0);
  CHECK(project_onto_cone(vec({-2, 1, 0})).norm() == 0);
  CHECK((project_onto_cone(vec({0, 1, 0})) - vec({0.5, 0.5, 0})).norm() < 1e-15);
}

TEST_CASE("projection matches a grid search") {
  // Distance from p = (0, 1) to Q in R^2 over a fine grid of Q.
  const Eigen::VectorXd p = vec({0.3, 1.0});
  double best = 1e9;
  Eigen::VectorXd arg;
  for (int i = 0; i <= 2000; ++i) {
    const double q0 = i * 1e-3;
    for (double sgn : {-1.0, 1.0}) {
      for (int j = 0; j <= 200; ++j) {
        Eigen::VectorXd q = vec({q0, sgn * q0 * j / 200.0});
        const double d = (q - p).norm();
        if (d < best) best = d, arg = q;
      }
    }
  }
  CHECK((project_onto_cone(p) - arg).norm() < 5e-3);
  CHECK((project_onto_cone(p) - p).norm() <= best + 1e-12);
}

TEST_CASE("projection properties") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd p = testutil::gaussian(rng, 4);
    Eigen::VectorXd q = project_onto_cone(p);
    CHECK((project_onto_cone(q) - q).norm() <= 1e-12);
    CHECK(std::abs((p - q).dot(q)) <= 1e-10);
    CHECK(dual_contains(p - q, 1e-12));
  }
}

TEST_CASE("tangent residual") {
  CHECK(tangent_cone_residual(vec({0, 0, 0}), vec({1, 0, 0})) == doctest::Approx(-1));
  CHECK(tangent_cone_residual(vec({1, 1, 0}), vec({0, 0, 1})) == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::isinf(tangent_cone_residual(vec({2, 0, 0}), vec({-5, 3, 1}))));
  CHECK_THROWS_AS(tangent_cone_residual(vec({0, 1, 0}), vec({1, 0, 0})), ConeDomainError);
}

TEST_CASE("tangent residual agrees with feasibility of small steps") {
  std::mt19937_64 rng(4);
  const Eigen::VectorXd q = vec({1, 0.6, 0.8});
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd u = testutil::gaussian(rng, 3);
    const double r = tangent_cone_residual(q, u);
    if (std::abs(r) < 1e-3) continue;
    // dist(q + t u; Q) / t tends to 0 exactly for tangent directions.
    const double tt = 1e-6;
    const Eigen::VectorXd y = q + tt * u;
    const double ratio = (project_onto_cone(y) - y).norm() / tt;
    CHECK((r <= 0) == (ratio < 1e-4));
  }
}

TEST_CASE("normal cone description") {
  CHECK(normal_cone_description(vec({0, 0, 0})).kind == NormalConeDesc::Kind::FullDual);
  CHECK(normal_cone_description(vec({2, 0, 0})).kind == NormalConeDesc::Kind::Zero);
  const NormalConeDesc ray = normal_cone_description(vec({1, 1, 0}));
  REQUIRE(ray.kind == NormalConeDesc::Kind::Ray);
  CHECK(ray.contains(vec({-2, 2, 0})));
  CHECK_FALSE(ray.contains(vec({-2, 1, 0})));
  CHECK_THROWS_AS(normal_cone_description(vec({0, 1, 0})), ConeDomainError);
}

TEST_CASE("normal rays annihilate boundary points and are polar to tangents") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 3.0);
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd q = testutil::gaussian(rng, 4);
    q(0) = q.tail(3).norm();
    const NormalConeDesc d = normal_cone_description(q);
    REQUIRE(d.kind == NormalConeDesc::Kind::Ray);
    const Eigen::VectorXd lam = U(rng) * d.generator;
    CHECK(std::abs(lam.dot(q)) <= 1e-10);
    Eigen::VectorXd u = testutil::gaussian(rng, 4);
    if (tangent_cone_residual(q, u) <= 0) CHECK(lam.dot(u) <= 1e-9);
  }
}
