#include "tiltsocp/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "tiltsocp/errors.hpp"
#include "tiltsocp/lorentz.hpp"
#include "tiltsocp/numeric.hpp"

namespace tiltsocp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd minkowski(int p) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(p, p);
  D(0, 0) = -1.0;
  return D;
}

bool critical_member(const Eigen::MatrixXd& J, const Eigen::VectorXd& gf,
                     const Eigen::VectorXd& u, double tol) {
  const double scale = std::max(1.0, J.norm()) * std::max(1.0, u.norm());
  const Eigen::VectorXd q = J * u;
  const double cone_res = q.tail(q.size() - 1).norm() - q(0);
  return cone_res <= tol * scale && std::abs(gf.dot(u)) <= tol * std::max(1.0, gf.norm()) * scale;
}

// Pseudoinverse of a symmetric positive semidefinite matrix with small
// eigenvalues treated as zero.
Eigen::MatrixXd psd_pinv(const Eigen::MatrixXd& S) {
  if (S.rows() == 0) return S;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  const Eigen::VectorXd& mu = es.eigenvalues();
  const double cut = 1e-10 * std::max(1.0, mu.cwiseAbs().maxCoeff());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(S.rows(), S.cols());
  for (int i = 0; i < mu.size(); ++i) {
    if (std::abs(mu(i)) > cut) out += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose() / mu(i);
  }
  return out;
}

}  // namespace

bool CriticalCone::contains(const Eigen::VectorXd& u, double tol) const {
  if (kind == Kind::Subspace) {
    const Eigen::VectorXd r = basis.cols() ? Eigen::VectorXd(u - basis * (basis.transpose() * u)) : u;
    return r.norm() <= tol * std::max(1.0, u.norm());
  }
  return critical_member(jacobian, grad_f, u, tol);
}

CriticalCone critical_cone(const ProblemInstance& inst) {
  CriticalCone k;
  k.jacobian = inst.J();
  k.grad_f = inst.grad_f();
  const ProbeResult probe = out_of_kernel_probe(inst);
  if (!probe.out_of_kernel) {
    k.kind = CriticalCone::Kind::Subspace;
    Eigen::MatrixXd A(inst.J().rows() + 1, inst.n);
    A.topRows(inst.J().rows()) = inst.J();
    A.bottomRows(1) = inst.grad_f().transpose();
    k.basis = null_space(A, inst.tol.tol_rank);
  } else {
    k.kind = CriticalCone::Kind::ConicSlice;
    k.basis = inst.grad_f().norm() <= inst.tol.tol_zero
                  ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(inst.n, inst.n))
                  : null_space(inst.grad_f().transpose(), inst.tol.tol_rank);
  }
  return k;
}

MultiplierSlice multiplier_slice(const ProblemInstance& inst) {
  return build_slice(inst.J(), -inst.grad_f(), inst.tol.tol_rank);
}

MultiplierSlice lambda0_set(const ProblemInstance& inst) {
  if (inst.grad_f().norm() <= inst.tol.tol_zero) {
    MultiplierSlice s;
    s.offset = Eigen::VectorXd::Zero(inst.m + 1);
    s.basis = Eigen::MatrixXd(inst.m + 1, 0);
    return s;
  }
  return multiplier_slice(inst);
}

ConeLPResult directional_multipliers(const ProblemInstance& inst, const Eigen::VectorXd& u) {
  if (!critical_member(inst.J(), inst.grad_f(), u, 1e-8)) {
    throw std::invalid_argument("directional_multipliers: u is not a critical direction");
  }
  const Eigen::VectorXd d = second_order_action(inst.gb, u, u);
  ConeLPResult r = maximize_linear(multiplier_slice(inst), d);
  if (r.status == LPStatus::Unbounded) {
    throw UnboundedMultiplierSet("directional multiplier set is empty: objective unbounded");
  }
  if (r.status == LPStatus::Infeasible) {
    throw std::invalid_argument("directional_multipliers: multiplier set is empty");
  }
  return r;
}

Eigen::MatrixXd curvature_H(const Eigen::VectorXd& lambda, const MapBundle& gx,
                            const ConeTolerance& tol) {
  const int n = static_cast<int>(gx.jacobian.cols());
  if (classify(gx.value, tol) != ConeClass::BoundaryNonzero) return Eigen::MatrixXd::Zero(n, n);
  const double g0 = gx.value(0);
  if (std::abs(g0) <= tol.zero) throw ConeDomainError("curvature_H: g0 vanishes on the boundary");
  const int m = gx.rows() - 1;
  const Eigen::MatrixXd Jr = gx.jacobian.bottomRows(m);
  const Eigen::RowVectorXd J0 = gx.jacobian.row(0);
  return (-lambda(0) / g0) * (Jr.transpose() * Jr - J0.transpose() * J0);
}

Eigen::MatrixXd lagrangian_hessian(const ProblemInstance& inst, const Eigen::VectorXd& lambda) {
  return inst.fb.hessian + inst.gb.weighted_hessian(lambda);
}

RhoResult rho(const ProblemInstance& inst, const Eigen::VectorXd& u,
              const Eigen::VectorXd& lambda, const Eigen::VectorXd& v) {
  const int n = inst.n;
  const int p = inst.m + 1;
  RhoResult out;
  out.z = Eigen::VectorXd::Zero(n);
  if (lambda.norm() <= inst.tol.tol_zero) return out;

  const Eigen::MatrixXd& J = inst.J();
  const Eigen::VectorXd b = second_order_action(inst.gb, v, u);
  const Eigen::VectorXd a = J.transpose() * lambda;
  const double kappa = lambda.dot(b);
  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd W;
  if (a.norm() <= 1e-12 * std::max(1.0, J.norm()) * lambda.norm()) {
    if (std::abs(kappa) > 1e-10 * (1.0 + lambda.norm() * b.norm())) {
      out.finite = false;
      out.value = kInf;
      return out;
    }
    W = Eigen::MatrixXd::Identity(n, n);
  } else {
    z0 = -kappa * a / a.squaredNorm();
    W = null_space(a.transpose(), inst.tol.tol_rank);
  }

  const Eigen::MatrixXd D = minkowski(p);
  const double l0 = lambda(0);
  const Eigen::VectorXd e = J * z0 + b;
  const Eigen::MatrixXd M = J * W;
  const Eigen::MatrixXd B = -2.0 * l0 * M.transpose() * D * M;
  const Eigen::VectorXd c = -2.0 * l0 * M.transpose() * D * e;

  Eigen::VectorXd y = Eigen::VectorXd::Zero(W.cols());
  if (W.cols() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (B + B.transpose()));
    const Eigen::VectorXd& mu = es.eigenvalues();
    const double tol = 1e-9 * std::max(1.0, mu.cwiseAbs().maxCoeff());
    if (mu(0) < -tol) {
      std::ostringstream os;
      os << "rho: reduced quadratic has eigenvalue " << mu(0);
      throw NumericalIndefiniteness(os.str());
    }
    for (int i = 0; i < mu.size(); ++i) {
      const Eigen::VectorXd q = es.eigenvectors().col(i);
      const double ci = q.dot(c);
      if (mu(i) > tol) {
        y -= (ci / mu(i)) * q;
      } else if (std::abs(ci) > 1e-7 * (1.0 + c.norm() + B.norm())) {
        throw NumericalIndefiniteness("rho: reduced quadratic is unbounded below");
      }
    }
  }
  out.z = z0 + W * y;
  const Eigen::VectorXd eta = J * out.z + b;
  out.value = -l0 * (eta.tail(p - 1).squaredNorm() - eta(0) * eta(0));
  return out;
}

RhoForm rho_form(const ProblemInstance& inst, const Eigen::VectorXd& lambda,
                 const Eigen::VectorXd& v) {
  const int n = inst.n;
  const int p = inst.m + 1;
  RhoForm out;
  out.R = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd& J = inst.J();
  const Eigen::VectorXd a = J.transpose() * lambda;
  if (lambda.norm() <= inst.tol.tol_zero) {
    out.valid = true;
    return out;
  }
  if (a.norm() <= 1e-12 * std::max(1.0, J.norm()) * lambda.norm()) return out;
  const Eigen::MatrixXd Hv = inst.gb.action_matrix(v);
  const Eigen::MatrixXd G = Hv - (J * a) * (lambda.transpose() * Hv) / a.squaredNorm();
  const Eigen::MatrixXd W = null_space(a.transpose(), inst.tol.tol_rank);
  const Eigen::MatrixXd M = J * W;
  const Eigen::MatrixXd D = minkowski(p);
  const Eigen::MatrixXd GDM = G.transpose() * D * M;
  Eigen::MatrixXd R = -lambda(0) * (G.transpose() * D * G - GDM * psd_pinv(M.transpose() * D * M) * GDM.transpose());
  out.R = 0.5 * (R + R.transpose());
  out.valid = true;
  return out;
}

Eigen::VectorXd lambda_bar(const ProblemInstance& inst, const Eigen::VectorXd& u_bar) {
  const double gf = inst.grad_f().norm();
  if (gf <= inst.tol.tol_zero) return Eigen::VectorXd::Zero(inst.m + 1);
  const Eigen::VectorXd gh = hat(Eigen::VectorXd(inst.J() * u_bar));
  const double denom = (inst.J().transpose() * gh).norm();
  if (denom <= inst.tol.tol_zero) {
    throw DegenerateScaling("lambda_bar: J^T hat(J u_bar) vanishes while grad f does not");
  }
  return (gf / denom) * gh;
}

bool two_regular(const ProblemInstance& inst, const Eigen::VectorXd& v) {
  const Eigen::MatrixXd& J = inst.J();
  const Eigen::MatrixXd P = null_space(J, inst.tol.tol_rank);
  Eigen::MatrixXd A(J.rows(), J.cols() + P.cols());
  A.leftCols(J.cols()) = J;
  if (P.cols()) A.rightCols(P.cols()) = inst.gb.action_matrix(v) * P;
  return numerical_rank(A, inst.tol.tol_rank) == inst.m + 1;
}

Eigen::MatrixXd u_subspace(const ProblemInstance& inst, const Eigen::VectorXd& lambda) {
  const int n = inst.n;
  if (lambda.norm() <= inst.tol.tol_zero) return Eigen::MatrixXd::Identity(n, n);
  const ConePoint h = hat(lambda);
  switch (classify(h, inst.tol.cone())) {
    case ConeClass::Zero:
      return Eigen::MatrixXd::Identity(n, n);
    case ConeClass::Interior:
      return null_space(inst.J(), inst.tol.tol_rank);
    default: {
      const Eigen::VectorXd e = h.normalized();
      const Eigen::MatrixXd Pe = Eigen::MatrixXd::Identity(e.size(), e.size()) - e * e.transpose();
      return null_space(Pe * inst.J(), inst.tol.tol_rank);
    }
  }
}

double QuadrupleZ::max_residual() const {
  return std::max({res_orth, res_quad, res_kernel, res_normal, res_unit});
}

QuadrupleZ make_quadruple(const ProblemInstance& inst, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& lambda, const Eigen::VectorXd& v,
                          const Eigen::VectorXd& w) {
  QuadrupleZ z;
  z.u = u;
  z.lambda = lambda;
  z.v = v;
  z.w = w;
  const Eigen::MatrixXd& J = inst.J();
  z.q = J * w + 0.5 * second_order_action(inst.gb, v, v);
  const Eigen::VectorXd Ju = J * u;
  const int m = inst.m;
  z.res_orth = std::abs(lambda.dot(Ju));
  z.res_quad = std::abs(lambda(0) * (Ju.tail(m).squaredNorm() - Ju(0) * Ju(0)));
  z.res_kernel = (J * v).norm();
  z.res_unit = std::abs(u.norm() - 1.0) + std::abs(v.norm() - 1.0);
  const ConeTolerance ct = inst.tol.cone();
  if (classify(z.q, ct) == ConeClass::Outside) {
    z.res_normal = kInf;
    return z;
  }
  const NormalConeDesc nd = normal_cone_description(z.q, ct);
  switch (nd.kind) {
    case NormalConeDesc::Kind::FullDual:
      z.res_normal = std::max(0.0, lambda(0) + lambda.tail(m).norm()) / std::sqrt(2.0);
      break;
    case NormalConeDesc::Kind::Zero:
      z.res_normal = lambda.norm();
      break;
    case NormalConeDesc::Kind::Ray: {
      const double alpha = std::max(0.0, lambda.dot(nd.generator) / nd.generator.squaredNorm());
      z.res_normal = (lambda - alpha * nd.generator).norm();
      break;
    }
  }
  return z;
}

}  // namespace tiltsocp
