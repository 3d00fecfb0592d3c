#pragma once

// Small dense log-barrier path follower for problems of the form
//   maximize c^T y  subject to  a_i + A_i y in L_i,
// where L_i is the standard second-order cone {z0 >= ||z_r||} (or the
// half line z0 >= 0 for one-dimensional blocks).

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace tiltsocp::detail {

struct SocBlock {
  Eigen::VectorXd a;
  Eigen::MatrixXd A;
};

struct BarrierProblem {
  Eigen::VectorXd c;
  std::vector<SocBlock> blocks;

  int dim() const { return static_cast<int>(c.size()); }
  /// max_i (||z_r|| - z0); negative iff y is strictly feasible.
  double max_violation(const Eigen::VectorXd& y) const;
};

struct BarrierResult {
  Eigen::VectorXd y;
  double value = 0.0;
  bool converged = false;
};

/// Path following from a strictly feasible y0. Stops when nu / t falls
/// below gap_tol * (1 + |c^T y|), or when stop(y) returns true.
BarrierResult barrier_maximize(const BarrierProblem& p, Eigen::VectorXd y0,
                               double gap_tol = 1e-10,
                               const std::function<bool(const Eigen::VectorXd&)>& stop = {});

enum class PhaseOneStatus { Interior, BoundaryOnly, Infeasible };

struct PhaseOneResult {
  PhaseOneStatus status;
  /// Strictly feasible point for Interior, best found point otherwise.
  Eigen::VectorXd y;
  /// Smallest achieved max_violation.
  double violation;
};

/// Looks for a strictly feasible point inside the ball ||y|| <= radius.
PhaseOneResult phase_one(const BarrierProblem& p, const Eigen::VectorXd& y0,
                         double radius, double feas_tol);

}  // namespace tiltsocp::detail
