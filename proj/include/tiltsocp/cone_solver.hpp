#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace tiltsocp {

struct ProblemInstance;

/**
 * The affine slice {offset + basis * xi} intersected with Q*.
 *
 * offset is the minimum-norm solution of J^T lambda = c and the columns of
 * basis are an orthonormal basis of ker J^T, so offset is orthogonal to
 * every column of basis.
 */
struct MultiplierSlice {
  Eigen::VectorXd offset;
  Eigen::MatrixXd basis;
  /// The affine system J^T lambda = c has no solution.
  bool empty = false;

  int ambient() const { return static_cast<int>(offset.size()); }
  int dim() const { return static_cast<int>(basis.cols()); }
  Eigen::VectorXd point(const Eigen::VectorXd& xi) const { return offset + basis * xi; }
};

/// Slice of {lambda : J^T lambda = c} with J of size (1+m) x n.
MultiplierSlice build_slice(const Eigen::MatrixXd& J, const Eigen::VectorXd& c,
                            double tol_rank = 1e-8);

/// Slice {offset + span(directions)}; directions are orthonormalized and the
/// offset replaced by its component orthogonal to them.
MultiplierSlice make_slice(const Eigen::VectorXd& offset, const Eigen::MatrixXd& directions,
                           double tol_rank = 1e-8);

enum class LPStatus { Optimal, Infeasible, Unbounded };
/// Position of the maximizer inside Q*.
enum class ArgmaxKind { Vertex, Interior, BoundaryRay };

const char* to_string(LPStatus s);
const char* to_string(ArgmaxKind k);

struct ConeLPResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd argmax;
  ArgmaxKind active = ArgmaxKind::Interior;
  /// The argmax is a face with more than one point (minimum-norm element returned).
  bool face = false;
};

struct ConeSolverOptions {
  double gap_tol = 1e-10;
  double feas_tol = 1e-9;
  /// Skip the minimum-norm tie break; only the optimal value is needed.
  bool value_only = false;
};

/// max <lambda, d> over the slice, optionally inside ||lambda|| <= bound.
ConeLPResult maximize_linear(const MultiplierSlice& slice, const Eigen::VectorXd& d,
                             std::optional<double> bound = std::nullopt,
                             const ConeSolverOptions& opt = {});

struct FeasibilityResult {
  bool feasible = false;
  Eigen::VectorXd point;
  /// point lies in the interior of Q*; xi are its slice coordinates.
  bool interior = false;
  Eigen::VectorXd xi;
};

FeasibilityResult feasibility(const MultiplierSlice& slice, const ConeSolverOptions& opt = {});

/**
 * Extreme rays of Q* (dual == true) or Q (dual == false) that meet the slice,
 * each returned as the unique slice point on it (or the unit generator when
 * the whole ray lies in the slice). Used when the slice misses the interior.
 */
struct RayHit {
  Eigen::VectorXd generator;  ///< unit vector on the ray
  Eigen::VectorXd point;      ///< a slice point on the ray
  bool whole_ray = false;     ///< every multiple of generator lies in the slice
};
std::vector<RayHit> boundary_rays(const MultiplierSlice& slice, bool dual, double tol);

/**
 * Exit point of the ray offset + basis * (xi + r * dir), r >= 0, from Q*,
 * where xi is strictly feasible. Empty when the ray stays in Q*.
 */
std::optional<Eigen::VectorXd> slice_boundary_point(const MultiplierSlice& slice,
                                                    const Eigen::VectorXd& xi,
                                                    const Eigen::VectorXd& dir);

struct ProbeResult {
  bool out_of_kernel = false;
  /// Maximizer of the probe (unit length when out_of_kernel).
  Eigen::VectorXd u_bar;
  double value = 0.0;
};

/// max grad g0(x) u over {J u in Q, <grad f, u> = 0, ||u|| <= 1}.
ProbeResult out_of_kernel_probe(const ProblemInstance& inst);

}  // namespace tiltsocp
