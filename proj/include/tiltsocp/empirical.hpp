#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tiltsocp/problem.hpp"

namespace tiltsocp {

struct RestoreResult {
  Eigen::VectorXd x;
  /// dist(g(x); Q) at the returned point.
  double violation = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Gauss-Newton on r(x) = proj_Q(g(x)) - g(x), at most max_iter steps.
RestoreResult restore_feasibility(const ProblemInstance& inst, const Eigen::VectorXd& x,
                                  int max_iter = 50);

/// Feasible points of the ball B_gamma(x_base) used to seed the tilted solves.
struct SeedCloud {
  double gamma = 0.0;
  std::vector<Eigen::VectorXd> points;
  /// Grid spacing (or typical spacing for random clouds).
  double spacing = 0.0;
  /// Random sampling instead of a grid (n > 4).
  bool heuristic = false;
};

SeedCloud make_seed_cloud(const ProblemInstance& inst, double gamma, std::uint64_t seed);

struct TiltedSolution {
  Eigen::VectorXd x;
  double value = 0.0;
  double violation = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Approximate global minimizer of f - <v_star, .> over the feasible set inside B_gamma(x_base).
TiltedSolution solve_tilted(const ProblemInstance& inst, const Eigen::VectorXd& v_star,
                            const SeedCloud& cloud);
TiltedSolution solve_tilted(const ProblemInstance& inst, const Eigen::VectorXd& v_star, double gamma);

struct TiltExperiment {
  double gamma = 0.0;
  double r_tilt = 0.0;
  int grid_size = 0;
  std::vector<Eigen::VectorXd> tilt_grid;
  /// solutions[i] solves the problem tilted by tilt_grid[i].
  std::vector<Eigen::VectorXd> solutions;
  /// Largest ratio over all tilt pairs, including the bisection refinements.
  double modulus_estimate = 0.0;
  /// Largest ratio over the cross grid alone.
  double grid_modulus = 0.0;
  /// Local polishes spent sweeping grid segments and bisecting branch switches.
  int refinements = 0;
  double kappa_theory = std::numeric_limits<double>::quiet_NaN();
  /// A pairwise ratio above 1e3, or x(0) away from x_base.
  bool unstable = false;
  /// Some solve hit its iteration cap.
  bool degraded = false;
  bool heuristic = false;
  double base_deviation = 0.0;
  double max_violation = 0.0;
};

/// Cross pattern: grid_size points on each axis and each pairwise diagonal, radius r_tilt.
std::vector<Eigen::VectorXd> tilt_grid(int n, double r_tilt, int grid_size);

TiltExperiment empirical_tilt(const ProblemInstance& inst, double gamma, double r_tilt,
                              int grid_size = 11,
                              std::optional<double> kappa_theory = std::nullopt,
                              std::uint64_t seed = 0);

struct NeighborhoodWitness {
  Eigen::VectorXd x, x_star, u, lambda;
  double value = 0.0;
  std::string stratum;
};

struct NeighborhoodResult {
  std::optional<NeighborhoodWitness> witness;
  /// Smallest form value seen over all evaluated tuples.
  double min_value = std::numeric_limits<double>::infinity();
  int evaluated = 0;
  int vertex = 0, boundary = 0, interior = 0;
  bool heuristic = false;
};

/**
 * Samples tuples (x, x*, u, lambda) of the neighborhood condition with
 * |x - x_base| <= eta, |x*| <= eta and reports the first one whose form value
 * is below 1/kappa. With stop_at_witness false all samples are evaluated.
 */
NeighborhoodResult neighborhood_falsify(const ProblemInstance& inst, double kappa, double eta,
                                        int samples, std::uint64_t seed = 0,
                                        bool stop_at_witness = true);

struct LadderStep {
  double eta = 0.0;
  double min_value = 0.0;
  /// 1 / min_value when positive, +inf otherwise.
  double sup_inverse = 0.0;
};

/// Inner sup of the exact-bound formula on a fixed eta ladder.
std::vector<LadderStep> neighborhood_ladder(const ProblemInstance& inst, int samples,
                                            std::uint64_t seed = 0,
                                            std::vector<double> etas = {1e-1, 1e-2, 1e-3});

struct MscqWitness {
  Eigen::VectorXd x;
  double dist_g = 0.0;
  /// Certified lower bound on dist(x; feasible set).
  double dist_x_lower = 0.0;
};

struct MscqResult {
  std::optional<MscqWitness> witness;
  int evaluated = 0;
  /// Restoration bound exceeded sigma * dist but certification failed.
  int uncertified = 0;
  bool heuristic = false;
};

/// Searches x in B_radius(x_base) with dist(x; g^-1(Q)) > sigma dist(g(x); Q).
MscqResult mscq_falsify(const ProblemInstance& inst, int samples, std::uint64_t seed = 0,
                        double radius = 0.1);

}  // namespace tiltsocp
