#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "test_util.hpp"
#include "tiltsocp/analyzer.hpp"
#include "tiltsocp/lorentz.hpp"

using namespace tiltsocp;
using testutil::vec;

namespace {

const double kR15 = std::sqrt(15.0);

ProblemInstance identity(const Eigen::MatrixXd& S, const Eigen::VectorXd& c) {
  return testutil::identity_instance(S, c);
}

/// g = (|x|^2, 0) on R^2: every direction is critical and Lambda = Q*.
ProblemInstance flat_in_kernel(double a, double b) {
  std::vector<PolyFunc> g = {PolyFunc(2, {{1.0, {2, 0}}, {1.0, {0, 2}}}), PolyFunc(2)};
  Eigen::MatrixXd S(2, 2);
  S << a, 0, 0, b;
  return make_instance(PolyFunc::quadratic(S, Eigen::VectorXd::Zero(2)), g, Eigen::VectorXd::Zero(2), 1.0);
}

}  // namespace

TEST_CASE("case dispatch") {
  CHECK(classify_case(testutil::load("example51.json")).tag == CaseTag::InKernel);
  const CaseResult out = classify_case(testutil::load("identity_ok.json"));
  CHECK(out.tag == CaseTag::OutOfKernel);
  CHECK((out.probe.u_bar - vec({1, 1, 0}).normalized()).norm() < 1e-8);
  // -grad f in the interior of Q*: K = {0}.
  CHECK(classify_case(identity(Eigen::MatrixXd::Identity(3, 3), vec({1, 0, 0}))).tag == CaseTag::InKernel);
}

TEST_CASE("out-of-kernel verdicts") {
  const ProblemInstance ok = testutil::load("identity_ok.json");
  const AnalysisVerdict a = out_kernel_check(ok, classify_case(ok).probe);
  CHECK(a.verdict == Verdict::TiltStable);
  CHECK(a.bound_estimate == doctest::Approx(1.0).epsilon(1e-6));
  CHECK((a.lambda_bar - vec({-1, 1, 0})).norm() < 1e-10);

  const ProblemInstance bad = testutil::load("identity_bad.json");
  const AnalysisVerdict b = out_kernel_check(bad, classify_case(bad).probe);
  CHECK(b.verdict == Verdict::NotTiltStable);
  CHECK(b.out_min < 0);

  // lambda bar = 0: the test reduces to definiteness of the objective Hessian.
  const ProblemInstance pd = identity(Eigen::Vector3d(2, 3, 4).asDiagonal(), Eigen::VectorXd::Zero(3));
  const AnalysisVerdict c = analyze(pd);
  CHECK(c.case_tag == CaseTag::OutOfKernel);
  CHECK(c.lambda_bar.norm() == 0);
  CHECK(c.verdict == Verdict::TiltStable);
  CHECK(c.bound_estimate == doctest::Approx(0.5).epsilon(1e-6));
  const ProblemInstance nd = identity(Eigen::Vector3d(2, -3, 4).asDiagonal(), Eigen::VectorXd::Zero(3));
  CHECK(analyze(nd).verdict == Verdict::NotTiltStable);
}

TEST_CASE("out-of-kernel form scales with the objective") {
  for (double t : {0.5, 3.0}) {
    const ProblemInstance a = identity(Eigen::Vector3d(2, 3, 4).asDiagonal(), Eigen::VectorXd::Zero(3));
    const ProblemInstance b = identity(t * Eigen::Vector3d(2, 3, 4).asDiagonal(), Eigen::VectorXd::Zero(3));
    const AnalysisVerdict va = analyze(a), vb = analyze(b);
    CHECK(vb.out_min == doctest::Approx(t * va.out_min).epsilon(1e-9));
  }
}

TEST_CASE("empty critical cone") {
  const ProblemInstance inst = identity(Eigen::MatrixXd::Identity(3, 3), vec({1, 0, 0}));
  const AnalysisVerdict v = analyze(inst);
  CHECK(v.case_tag == CaseTag::InKernel);
  CHECK(v.verdict == Verdict::TiltStable);
  CHECK(v.infimum_not_attained);
  CHECK(v.bound_estimate == 0);
  CHECK(std::isinf(v.chi1.value));
  CHECK(v.simplified.passes);
}

TEST_CASE("simplified test") {
  const ProblemInstance ex = testutil::load("example51.json");
  const SimplifiedResult s = simplified_check(ex);
  CHECK_FALSE(s.passes);
  CHECK(s.min_value < 0);

  // The degenerate direction itself: form value 0 at lambda_tilde and u = (0, +-1, 0).
  const Eigen::VectorXd lt = vec({-4 / kR15, 1 / kR15, 1});
  for (double sgn : {-1.0, 1.0}) {
    const Eigen::VectorXd u = vec({0, sgn, 0});
    CHECK(std::abs(u.dot(lagrangian_hessian(ex, lt) * u)) <= 1e-8);
  }

  const ProblemInstance convex = identity(2 * Eigen::MatrixXd::Identity(3, 3), vec({1, -1, 0}));
  CHECK(simplified_check(convex).passes);
  CHECK(simplified_check(identity(Eigen::MatrixXd::Identity(3, 3), vec({1, 0, 0}))).passes);
}

TEST_CASE("chi estimates on the reference instance") {
  const ProblemInstance ex = testutil::load("example51.json");
  const ChiResult c1 = chi1(ex);
  CHECK(c1.value == doctest::Approx(oracle::kChi1).epsilon(1e-6));
  const Chi23 c = chi2_chi3(ex);
  CHECK(c.chi3.value == doctest::Approx(oracle::kChi3).epsilon(1e-6));
  REQUIRE(c.chi3.cert.found);
  // The minimizing v sits at the ratio-3 direction of the two quadratic forms.
  const Eigen::VectorXd v = c.chi3.cert.v;
  const double ang = std::atan2(v(1), v(0));
  const double folded = std::fmod(ang + 2 * M_PI, M_PI);
  CHECK(folded == doctest::Approx(oracle::kChi3VAngle).epsilon(1e-4));
  CHECK(dual_contains(c.chi3.cert.lambda, 1e-8));
}

TEST_CASE("reference instance verdict") {
  const ProblemInstance ex = testutil::load("example51.json");
  const AnalysisVerdict v = analyze(ex);
  CHECK(v.case_tag == CaseTag::InKernel);
  CHECK(v.verdict == Verdict::NotTiltStable);
  CHECK_FALSE(v.simplified.passes);
  CHECK(v.witness.found);
}

TEST_CASE("chi scales with the objective") {
  const ProblemInstance ex = testutil::load("example51.json");
  const ProblemInstance ex2 = make_instance(ex.f * 2.0, ex.g, ex.x_base, ex.sigma);
  const ChiResult a = chi1(ex), b = chi1(ex2);
  CHECK(b.value == doctest::Approx(2 * a.value).epsilon(1e-6));
  REQUIRE(a.cert.found);
  REQUIRE(b.cert.found);
  CHECK(std::abs(std::abs(a.cert.u.dot(b.cert.u)) - 1) < 1e-4);
}

TEST_CASE("chi estimates are running minima") {
  const ProblemInstance ex = testutil::load("example51.json");
  AnalyzerOptions small, large;
  small.budget = 2;
  large.budget = 16;
  CHECK(chi1(ex, large).value <= chi1(ex, small).value + 1e-12);
  const Chi23 s = chi2_chi3(ex, small), l = chi2_chi3(ex, large);
  CHECK(l.chi2.value <= s.chi2.value + 1e-12);
  CHECK(l.chi3.value <= s.chi3.value + 1e-12);
}

TEST_CASE("in-kernel verdicts with a trivial Jacobian") {
  const AnalysisVerdict bad = analyze(flat_in_kernel(-1, 1));
  CHECK(bad.case_tag == CaseTag::InKernel);
  CHECK(bad.verdict == Verdict::NotTiltStable);
  CHECK(bad.chi1.value == doctest::Approx(-1).epsilon(1e-6));

  const AnalysisVerdict good = analyze(flat_in_kernel(1, 2));
  CHECK(good.case_tag == CaseTag::InKernel);
  CHECK(good.verdict == Verdict::TiltStable);
  CHECK(good.bound_estimate == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("sufficient and necessary tests never disagree") {
  for (double a : {-2.0, -0.5, 0.5, 2.0}) {
    const ProblemInstance inst = identity(Eigen::Vector3d(1, a, 1).asDiagonal(), vec({1, -1, 0}));
    const AnalysisVerdict v = analyze(inst);
    if (v.out_min > inst.tol.margin_strict) CHECK(v.verdict == Verdict::TiltStable);
    if (v.out_min < -inst.tol.margin_strict) CHECK(v.verdict == Verdict::NotTiltStable);
  }
}
