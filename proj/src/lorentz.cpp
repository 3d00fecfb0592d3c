#include "tiltsocp/lorentz.hpp"

#include <cmath>
#include <limits>

#include "tiltsocp/errors.hpp"

namespace tiltsocp {

namespace {

double radial_norm(const ConePoint& q) { return q.tail(q.size() - 1).norm(); }

}  // namespace

const char* to_string(ConeClass c) {
  switch (c) {
    case ConeClass::Zero:
      return "zero";
    case ConeClass::Interior:
      return "interior";
    case ConeClass::BoundaryNonzero:
      return "boundary";
    case ConeClass::Outside:
      return "outside";
  }
  return "?";
}

ConeClass classify(const ConePoint& q, const ConeTolerance& tol) {
  if (q.norm() <= tol.zero) return ConeClass::Zero;
  const double gap = q(0) - radial_norm(q);
  const double band = tol.band(q);
  if (gap > band) return ConeClass::Interior;
  if (std::abs(gap) <= band) return q(0) > tol.zero ? ConeClass::BoundaryNonzero : ConeClass::Zero;
  return ConeClass::Outside;
}

ConePoint hat(const ConePoint& q) {
  ConePoint h = q;
  h(0) = -q(0);
  return h;
}

bool cone_contains(const ConePoint& q, double tol) {
  return radial_norm(q) - q(0) <= tol;
}

bool dual_contains(const ConePoint& lambda, double tol) {
  return radial_norm(lambda) + lambda(0) <= tol;
}

ConePoint project_onto_cone(const ConePoint& p) {
  const double r = radial_norm(p);
  if (r <= p(0)) return p;
  if (r <= -p(0)) return ConePoint::Zero(p.size());
  // Here r > |p0| >= 0, so the radial part has a direction.
  const double t = 0.5 * (p(0) + r);
  ConePoint out(p.size());
  out(0) = t;
  out.tail(p.size() - 1) = (t / r) * p.tail(p.size() - 1);
  return out;
}

double tangent_cone_residual(const ConePoint& q, const ConePoint& u,
                             const ConeTolerance& tol) {
  switch (classify(q, tol)) {
    case ConeClass::Zero:
      return radial_norm(u) - u(0);
    case ConeClass::Interior:
      return -std::numeric_limits<double>::infinity();
    case ConeClass::BoundaryNonzero: {
      const auto qr = q.tail(q.size() - 1);
      return qr.dot(u.tail(u.size() - 1)) / qr.norm() - u(0);
    }
    case ConeClass::Outside:
      break;
  }
  throw ConeDomainError("tangent_cone_residual: q is not in Q");
}

NormalConeDesc normal_cone_description(const ConePoint& q,
                                       const ConeTolerance& tol) {
  switch (classify(q, tol)) {
    case ConeClass::Zero:
      return {NormalConeDesc::Kind::FullDual, {}};
    case ConeClass::Interior:
      return {NormalConeDesc::Kind::Zero, {}};
    case ConeClass::BoundaryNonzero:
      return {NormalConeDesc::Kind::Ray, hat(q)};
    case ConeClass::Outside:
      break;
  }
  throw ConeDomainError("normal_cone_description: q is not in Q");
}

bool NormalConeDesc::contains(const ConePoint& lambda,
                              const ConeTolerance& tol) const {
  const double band = tol.band(lambda);
  switch (kind) {
    case Kind::FullDual:
      return dual_contains(lambda, band);
    case Kind::Zero:
      return lambda.norm() <= band;
    case Kind::Ray: {
      const double alpha = lambda.dot(generator) / generator.squaredNorm();
      if (alpha < -band) return false;
      return (lambda - std::max(alpha, 0.0) * generator).norm() <= band;
    }
  }
  return false;
}

}  // namespace tiltsocp
