#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "tiltsocp/analyzer.hpp"
#include "tiltsocp/empirical.hpp"
#include "tiltsocp/problem.hpp"

namespace tiltsocp {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a of the canonical instance serialization, as 16 hex digits.
std::string instance_hash(const ProblemInstance& inst);

struct CertificateRecord {
  Eigen::VectorXd u, lambda, v, w;
};

struct ChiRecord {
  /// +inf when no candidate exists (serialized as null).
  double value = 0.0;
  bool unbounded_multipliers = false;
  bool limit_only = false;
  int candidates = 0;
  std::optional<CertificateRecord> certificate;
};

struct EmpiricalRecord {
  double gamma = 0.0, r_tilt = 0.0;
  int grid_size = 0;
  double modulus_estimate = 0.0;
  double grid_modulus = 0.0;
  int refinements = 0;
  std::optional<double> kappa_theory;
  bool unstable = false, degraded = false, heuristic = false;
  double base_deviation = 0.0, max_violation = 0.0;
  std::vector<Eigen::VectorXd> tilt_grid, solutions;
};

/// Machine-readable outcome of one analyze run.
struct Report {
  int schema_version = kSchemaVersion;
  std::string version = kToolVersion;
  std::uint64_t seed = 0;
  std::string instance_hash;
  int n = 0, m = 0;
  double sigma = 0.0;
  std::string case_tag;
  std::string verdict;
  double bound_estimate = 0.0;
  bool infimum_not_attained = false;
  bool heuristic = false;
  std::string reason;
  Eigen::VectorXd u_bar, lambda_bar;
  double out_kernel_min = 0.0;
  ChiRecord chi1, chi2, chi3;
  std::optional<CertificateRecord> witness;
  /// "Passes" or "Fails".
  std::string simplified_test;
  double simplified_min = 0.0;
  std::optional<CertificateRecord> simplified_point;
  std::string two_regularity;
  int two_regular_checked = 0;
  int quadruples = 0;
  std::optional<EmpiricalRecord> empirical;
  double seconds = 0.0;
};

Report make_report(const ProblemInstance& inst, const AnalysisVerdict& a,
                   const std::optional<TiltExperiment>& ex, double seconds);

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

struct CommonArgs {
  std::string instance_path;
  std::optional<std::string> report_path;
  std::optional<double> tol_cone, tol_rank, margin;
  std::optional<std::uint64_t> seed;
};

struct AnalyzeArgs : CommonArgs {
  int budget = AnalyzerOptions{}.budget;
  double grid_h = AnalyzerOptions{}.grid_h;
  bool empirical = false;
  double gamma = 0.1;
  double r_tilt = 1e-3;
  int grid_size = 11;
};

struct FalsifyArgs : CommonArgs {
  /// "mscq" or "neighborhood".
  std::string mode;
  int samples = 10000;
  /// Defaults to 1.01 times the analyzer bound (1 when there is none).
  std::optional<double> kappa;
  double eta = 1e-2;
  double radius = 0.1;
};

/// Exit 0 TiltStable, 1 NotTiltStable, 2 Inconclusive, 64 input error.
int run_analyze(const AnalyzeArgs& args);
/// Exit 0 no witness, 3 witness found, 64 input error.
int run_falsify(const FalsifyArgs& args);

}  // namespace tiltsocp
