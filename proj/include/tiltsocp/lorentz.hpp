#pragma once

#include <Eigen/Core>

namespace tiltsocp {

/**
 * A point q = (q0, q_r) of R^{1+m}. Index 0 holds the axis coordinate q0,
 * indices 1..m the radial part q_r.
 */
using ConePoint = Eigen::VectorXd;

/// Bands used to classify points of the Lorentz cone.
struct ConeTolerance {
  /// ||q|| <= zero means the vertex.
  double zero = 1e-9;
  /// Absolute part of the boundary band.
  double abs = 1e-9;
  /// Relative part of the boundary band, multiplied by ||q||.
  double rel = 1e-9;

  double band(const ConePoint& q) const { return abs + rel * q.norm(); }
};

enum class ConeClass { Zero, Interior, BoundaryNonzero, Outside };

const char* to_string(ConeClass c);

/// Classifies q against Q = {||q_r|| <= q0}. The vertex test runs first.
ConeClass classify(const ConePoint& q, const ConeTolerance& tol = {});

/// The reflection (q0, q_r) -> (-q0, q_r). It is an involution.
ConePoint hat(const ConePoint& q);

/// ||q_r|| - q0 <= tol.
bool cone_contains(const ConePoint& q, double tol);

/**
 * Membership in Q* = {hat(q) : q in Q} = {||l_r|| + l0 <= 0}.
 * Note that Q* is the polar of Q: <l, q> <= 0 for l in Q*, q in Q.
 */
bool dual_contains(const ConePoint& lambda, double tol);

/// Euclidean projection onto Q.
ConePoint project_onto_cone(const ConePoint& p);

/**
 * Signed residual r with u in T_Q(q) iff r <= 0.
 * Returns -infinity for interior q. Throws ConeDomainError when q is outside Q.
 */
double tangent_cone_residual(const ConePoint& q, const ConePoint& u,
                             const ConeTolerance& tol = {});

/// Structured normal cone N_Q(q) for q in Q.
struct NormalConeDesc {
  enum class Kind { FullDual, Zero, Ray };
  Kind kind;
  /// hat(q) when kind == Ray, empty otherwise.
  ConePoint generator;

  /// Membership of lambda in the described cone, with the cone band of tol.
  bool contains(const ConePoint& lambda, const ConeTolerance& tol = {}) const;
};

/// Throws ConeDomainError when q is outside Q.
NormalConeDesc normal_cone_description(const ConePoint& q,
                                       const ConeTolerance& tol = {});

}  // namespace tiltsocp
