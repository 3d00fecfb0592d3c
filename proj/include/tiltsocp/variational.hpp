#pragma once

#include <Eigen/Core>

#include "tiltsocp/cone_solver.hpp"
#include "tiltsocp/problem.hpp"

namespace tiltsocp {

/// K = {u : J u in Q, <grad f, u> = 0} at the base point.
struct CriticalCone {
  enum class Kind { Subspace, ConicSlice };
  Kind kind = Kind::ConicSlice;
  /// Orthonormal basis of K (Subspace) or of grad f^perp (ConicSlice).
  Eigen::MatrixXd basis;
  Eigen::MatrixXd jacobian;
  Eigen::VectorXd grad_f;

  bool contains(const Eigen::VectorXd& u, double tol = 1e-8) const;
};

CriticalCone critical_cone(const ProblemInstance& inst);

/// Lambda^0: {0} when grad f vanishes, the multiplier slice otherwise.
MultiplierSlice lambda0_set(const ProblemInstance& inst);

/// Lambda(x_base, -grad f) as a slice.
MultiplierSlice multiplier_slice(const ProblemInstance& inst);

/**
 * argmax of <lambda, d2g(u, u)> over the multiplier set.
 * Throws std::invalid_argument when u is not critical and
 * UnboundedMultiplierSet when the argmax is empty.
 */
ConeLPResult directional_multipliers(const ProblemInstance& inst, const Eigen::VectorXd& u);

/**
 * Curvature term at a point x with constraint data gx: nonzero only when
 * g(x) is on the boundary of Q away from the vertex.
 */
Eigen::MatrixXd curvature_H(const Eigen::VectorXd& lambda, const MapBundle& gx,
                            const ConeTolerance& tol = {});

struct RhoResult {
  double value = 0.0;
  /// False when the constraint set is empty (value is +infinity).
  bool finite = true;
  Eigen::VectorXd z;
};

/// The infimum function at the base point. Throws NumericalIndefiniteness.
RhoResult rho(const ProblemInstance& inst, const Eigen::VectorXd& u,
              const Eigen::VectorXd& lambda, const Eigen::VectorXd& v);

/**
 * For fixed (lambda, v) with J^T lambda != 0, rho(., lambda, v) is the
 * positive semidefinite quadratic form u^T R u. The form is returned with
 * its symmetric matrix; valid is false when J^T lambda vanishes.
 */
struct RhoForm {
  Eigen::MatrixXd R;
  bool valid = false;
};
RhoForm rho_form(const ProblemInstance& inst, const Eigen::VectorXd& lambda,
                 const Eigen::VectorXd& v);

/// Out-of-kernel multiplier built from the probe direction. Throws DegenerateScaling.
Eigen::VectorXd lambda_bar(const ProblemInstance& inst, const Eigen::VectorXd& u_bar);

/// Rank test of [J | d2g(v, .) P] with P a basis of ker J.
bool two_regular(const ProblemInstance& inst, const Eigen::VectorXd& v);

/**
 * Orthonormal basis of {u : <lambda, J u> = 0, lambda0 (|J_r u|^2 - (J_0 u)^2) = 0}
 * for lambda in Q*. This set is a subspace: all of R^n at lambda = 0,
 * ker J for interior lambda, and {u : J u in span(hat lambda)} on the boundary.
 */
Eigen::MatrixXd u_subspace(const ProblemInstance& inst, const Eigen::VectorXd& lambda);

/// grad^2 f + sum_i lambda_i grad^2 g_i at the base point.
Eigen::MatrixXd lagrangian_hessian(const ProblemInstance& inst, const Eigen::VectorXd& lambda);

struct QuadrupleZ {
  Eigen::VectorXd u, lambda, v, w, q;
  double res_orth = 0.0;    ///< |<lambda, J u>|
  double res_quad = 0.0;    ///< |lambda0 (|J_r u|^2 - (J_0 u)^2)|
  double res_kernel = 0.0;  ///< |J v|
  double res_normal = 0.0;  ///< distance of lambda from N_Q(q), or inf when q is outside Q
  double res_unit = 0.0;    ///< ||u| - 1| + ||v| - 1|

  double max_residual() const;
};

/// Builds q = J w + d2g(v, v) / 2 and fills the residuals.
QuadrupleZ make_quadruple(const ProblemInstance& inst, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& lambda, const Eigen::VectorXd& v,
                          const Eigen::VectorXd& w);

}  // namespace tiltsocp
