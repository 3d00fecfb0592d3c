#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tiltsocp/cone_solver.hpp"
#include "tiltsocp/problem.hpp"
#include "tiltsocp/variational.hpp"

namespace tiltsocp {

enum class CaseTag { InKernel, OutOfKernel };
enum class Verdict { TiltStable, NotTiltStable, Inconclusive };
enum class TwoRegularity { Ok, Fails, NotApplicable };

const char* to_string(CaseTag c);
/// TILT_STABLE, NOT_TILT_STABLE or INCONCLUSIVE.
const char* to_string(Verdict v);
const char* to_string(TwoRegularity t);

/// A candidate point attaining (or approaching) one of the stratum minima.
struct Certificate {
  bool found = false;
  Eigen::VectorXd u, lambda, v, w;
};

struct ChiResult {
  double value = std::numeric_limits<double>::infinity();
  Certificate cert;
  /// Some direction had an empty directional multiplier set.
  bool unbounded_multipliers = false;
  /// The reported value is approached but not attained (q0 may grow without bound).
  bool limit_only = false;
  int candidates = 0;
};

struct SimplifiedResult {
  bool passes = true;
  /// Smallest form value over the sampled multipliers and their u-sets.
  double min_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd u, lambda, v;
  int multipliers = 0;
};

struct AnalyzerOptions {
  /// Number of local refinements started from the best grid points.
  int budget = 8;
  /// Arc spacing of the sphere grids.
  double grid_h = 0.05;
};

struct AnalysisVerdict {
  CaseTag case_tag = CaseTag::InKernel;
  Eigen::VectorXd u_bar, lambda_bar;
  Verdict verdict = Verdict::Inconclusive;
  double bound_estimate = 0.0;
  /// Every stratum is empty: any modulus works and the bound is reported as 0.
  bool infimum_not_attained = false;
  /// Dimensions beyond the exhaustive grid range.
  bool heuristic = false;
  std::string reason;
  Certificate witness;
  /// Out-of-kernel minimum of the Lagrangian form over its u-set.
  double out_min = std::numeric_limits<double>::infinity();
  ChiResult chi1, chi2, chi3;
  SimplifiedResult simplified;
  TwoRegularity two_regularity = TwoRegularity::NotApplicable;
  int two_regular_checked = 0;
  int quadruples = 0;
  std::map<std::string, double> diagnostics;
};

struct CaseResult {
  CaseTag tag = CaseTag::InKernel;
  ProbeResult probe;
};

CaseResult classify_case(const ProblemInstance& inst);

AnalysisVerdict out_kernel_check(const ProblemInstance& inst, const ProbeResult& probe);

SimplifiedResult simplified_check(const ProblemInstance& inst, std::optional<double> kappa = std::nullopt,
                                  const AnalyzerOptions& opt = {});

ChiResult chi1(const ProblemInstance& inst, const AnalyzerOptions& opt = {});

/// Candidate quadruples of the in-kernel set, each with u minimizing its stratum expression.
std::vector<QuadrupleZ> z_search(const ProblemInstance& inst, const AnalyzerOptions& opt = {});

struct Chi23 {
  ChiResult chi2, chi3;
  TwoRegularity two_regularity = TwoRegularity::NotApplicable;
  int two_regular_checked = 0;
  int quadruples = 0;
};
Chi23 chi2_chi3(const ProblemInstance& inst, const AnalyzerOptions& opt = {});

AnalysisVerdict in_kernel_verdict(const ProblemInstance& inst, const AnalyzerOptions& opt = {});

/// Case dispatch plus the matching verdict and the simplified test.
AnalysisVerdict analyze(const ProblemInstance& inst, const AnalyzerOptions& opt = {});

}  // namespace tiltsocp
