#include "conic_barrier.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace tiltsocp::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double block_violation(const Eigen::VectorXd& z) {
  if (z.size() == 1) return -z(0);
  return z.tail(z.size() - 1).norm() - z(0);
}

double block_nu(const SocBlock& b) { return b.a.size() == 1 ? 1.0 : 2.0; }

// Barrier value of all blocks at y; +inf outside the domain.
double barrier_value(const BarrierProblem& p, const Eigen::VectorXd& y) {
  double phi = 0.0;
  for (const auto& b : p.blocks) {
    const Eigen::VectorXd z = b.a + b.A * y;
    if (z.size() == 1) {
      if (!(z(0) > 0.0)) return kInf;
      phi -= std::log(z(0));
    } else {
      const double s = z(0) * z(0) - z.tail(z.size() - 1).squaredNorm();
      if (!(z(0) > 0.0) || !(s > 0.0)) return kInf;
      phi -= std::log(s);
    }
  }
  return phi;
}

void barrier_derivatives(const BarrierProblem& p, const Eigen::VectorXd& y,
                         Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
  const int d = p.dim();
  grad = Eigen::VectorXd::Zero(d);
  hess = Eigen::MatrixXd::Zero(d, d);
  for (const auto& b : p.blocks) {
    const Eigen::VectorXd z = b.a + b.A * y;
    if (z.size() == 1) {
      grad += b.A.transpose() * (-1.0 / z(0));
      hess += b.A.transpose() * b.A / (z(0) * z(0));
      continue;
    }
    const double s = z(0) * z(0) - z.tail(z.size() - 1).squaredNorm();
    Eigen::VectorXd Dz = -z;
    Dz(0) = z(0);
    const Eigen::VectorXd gz = (-2.0 / s) * Dz;
    Eigen::MatrixXd Hz = (4.0 / (s * s)) * Dz * Dz.transpose();
    Hz.diagonal().array() += 2.0 / s;
    Hz(0, 0) -= 4.0 / s;
    grad += b.A.transpose() * gz;
    hess += b.A.transpose() * Hz * b.A;
  }
}

}  // namespace

double BarrierProblem::max_violation(const Eigen::VectorXd& y) const {
  double v = -kInf;
  for (const auto& b : blocks) v = std::max(v, block_violation(b.a + b.A * y));
  return v;
}

BarrierResult barrier_maximize(const BarrierProblem& p, Eigen::VectorXd y,
                               double gap_tol,
                               const std::function<bool(const Eigen::VectorXd&)>& stop) {
  BarrierResult res;
  const int d = p.dim();
  double nu = 0.0;
  for (const auto& b : p.blocks) nu += block_nu(b);
  const double cnorm = p.c.norm();
  if (d == 0 || cnorm == 0.0 || p.blocks.empty()) {
    res.y = y;
    res.value = d == 0 ? 0.0 : p.c.dot(y);
    res.converged = cnorm == 0.0;
    return res;
  }

  double t = 1.0 / cnorm;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  bool stopped = false;
  for (int outer = 0; outer < 60 && !stopped; ++outer) {
    for (int inner = 0; inner < 200; ++inner) {
      barrier_derivatives(p, y, grad, hess);
      grad -= t * p.c;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      Eigen::VectorXd step = ldlt.solve(-grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        Eigen::MatrixXd reg = hess;
        reg.diagonal().array() += 1e-12 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
        step = reg.ldlt().solve(-grad);
      }
      const double decrement = -grad.dot(step);
      if (!(decrement > 1e-14)) break;
      const double f0 = -t * p.c.dot(y) + barrier_value(p, y);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls) {
        const Eigen::VectorXd trial = y + alpha * step;
        const double ft = -t * p.c.dot(trial) + barrier_value(p, trial);
        if (ft <= f0 - 0.25 * alpha * decrement) {
          y = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (stop && stop(y)) {
        stopped = true;
        break;
      }
      if (!moved || 0.5 * decrement < 1e-12) break;
    }
    if (stopped) break;
    if (nu / t <= gap_tol * (1.0 + std::abs(p.c.dot(y)))) {
      res.converged = true;
      break;
    }
    t *= 10.0;
  }
  res.y = y;
  res.value = p.c.dot(y);
  return res;
}

PhaseOneResult phase_one(const BarrierProblem& p, const Eigen::VectorXd& y0,
                         double radius, double feas_tol) {
  const int d = p.dim();
  const double v0 = p.max_violation(y0);
  if (v0 < -feas_tol) return {PhaseOneStatus::Interior, y0, v0};

  // Variables (y, s): every block relaxed by s on its axis coordinate.
  BarrierProblem aux;
  aux.c = Eigen::VectorXd::Zero(d + 1);
  aux.c(d) = -1.0;
  for (const auto& b : p.blocks) {
    SocBlock nb;
    nb.a = b.a;
    nb.A = Eigen::MatrixXd::Zero(b.a.size(), d + 1);
    nb.A.leftCols(d) = b.A;
    nb.A(0, d) = 1.0;
    aux.blocks.push_back(std::move(nb));
  }
  {
    SocBlock floor;
    floor.a = Eigen::VectorXd::Constant(1, 1.0);
    floor.A = Eigen::MatrixXd::Zero(1, d + 1);
    floor.A(0, d) = 1.0;
    aux.blocks.push_back(std::move(floor));
  }
  if (d > 0) {
    SocBlock ball;
    ball.a = Eigen::VectorXd::Zero(d + 1);
    ball.a(0) = radius;
    ball.A = Eigen::MatrixXd::Zero(d + 1, d + 1);
    ball.A.block(1, 0, d, d).setIdentity();
    aux.blocks.push_back(std::move(ball));
  }
  Eigen::VectorXd start(d + 1);
  start.head(d) = y0;
  start(d) = v0 + 1.0;

  Eigen::VectorXd best = y0;
  double best_violation = v0;
  auto track = [&](const Eigen::VectorXd& ys) {
    const Eigen::VectorXd y = ys.head(d);
    const double v = p.max_violation(y);
    if (v < best_violation) {
      best_violation = v;
      best = y;
    }
    return v < -feas_tol;
  };
  barrier_maximize(aux, start, 1e-12, track);
  if (best_violation < -feas_tol) return {PhaseOneStatus::Interior, best, best_violation};
  if (best_violation <= feas_tol) return {PhaseOneStatus::BoundaryOnly, best, best_violation};
  return {PhaseOneStatus::Infeasible, best, best_violation};
}

}  // namespace tiltsocp::detail
