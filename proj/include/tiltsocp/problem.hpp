#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tiltsocp/lorentz.hpp"
#include "tiltsocp/polynomial.hpp"

namespace tiltsocp {

struct ToleranceSet {
  double tol_zero = 1e-9;
  double tol_cone = 1e-9;
  /// Relative singular value cutoff.
  double tol_rank = 1e-8;
  double margin_strict = 1e-7;

  ConeTolerance cone() const { return {tol_zero, tol_cone, tol_cone}; }
};

/// Value, gradient and Hessian of a scalar polynomial at a point.
struct ScalarBundle {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

/// Value, Jacobian ((1+m) x n) and component Hessians of g at a point.
struct MapBundle {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  std::vector<Eigen::MatrixXd> hessians;

  int rows() const { return static_cast<int>(value.size()); }
  /// Matrix whose row i is (H_i v)^T, so that action_matrix(v) * u = d2g(v,u).
  Eigen::MatrixXd action_matrix(const Eigen::VectorXd& v) const;
  /// sum_i lambda_i H_i.
  Eigen::MatrixXd weighted_hessian(const Eigen::VectorXd& lambda) const;
};

ScalarBundle eval_derivatives(const PolyFunc& p, const Eigen::VectorXd& x);
MapBundle eval_derivatives(const std::vector<PolyFunc>& g, const Eigen::VectorXd& x);

/// Component i is v^T H_i u.
Eigen::VectorXd second_order_action(const MapBundle& g, const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& u);

/**
 * Instance of: minimize f(x) subject to g(x) in Q, with g : R^n -> R^{1+m}.
 * Base-point derivatives are cached at construction.
 */
struct ProblemInstance {
  int n = 0;
  int m = 0;
  PolyFunc f;
  std::vector<PolyFunc> g;
  Eigen::VectorXd x_base;
  /// Assumed modulus of metric subregularity at x_base.
  double sigma = 1.0;
  ToleranceSet tol;
  std::uint64_t seed = 0;

  ScalarBundle fb;
  MapBundle gb;

  /// Fills fb and gb. Called by make_instance and parse_instance.
  void refresh();

  const Eigen::MatrixXd& J() const { return gb.jacobian; }
  const Eigen::VectorXd& grad_f() const { return fb.gradient; }
  Eigen::VectorXd g_value(const Eigen::VectorXd& x) const;
};

/// Builds and validates an instance. Throws SchemaError or ValidationError.
ProblemInstance make_instance(PolyFunc f, std::vector<PolyFunc> g,
                              Eigen::VectorXd x_base, double sigma,
                              ToleranceSet tol = {}, std::uint64_t seed = 0);

/// Parses the JSON instance format. Throws SchemaError or ValidationError.
ProblemInstance parse_instance(const std::string& text);
ProblemInstance load_instance(const std::string& path);
std::string serialize_instance(const ProblemInstance& inst);

struct StationarityResult {
  bool stationary = false;
  /// A point of the multiplier set when stationary.
  Eigen::VectorXd witness;
};

/// Nonemptiness of {lambda in Q* : J^T lambda = -grad f(x_base)}.
StationarityResult validate_stationarity(const ProblemInstance& inst);

}  // namespace tiltsocp
