#include "tiltsocp/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "tiltsocp/cone_solver.hpp"
#include "tiltsocp/errors.hpp"
#include "tiltsocp/lorentz.hpp"
#include "tiltsocp/numeric.hpp"
#include "tiltsocp/variational.hpp"

namespace tiltsocp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-12;
// Pairwise ratio above which the tilt map counts as jumping.
constexpr double kJumpRatio = 1e3;
constexpr int kRefinedPairs = 8;
constexpr int kSweep = 16;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

double violation(const Vec& q) { return (project_onto_cone(q) - q).norm(); }

// Signed boundary residual |q_r| - q0.
double psi(const Vec& q) { return q.tail(q.size() - 1).norm() - q(0); }

Vec solve_min_norm(const Mat& A, const Vec& b) {
  return A.completeOrthogonalDecomposition().solve(b);
}

// Derivative of q -> (q0 + |q_r|)/2 (1, q_r/|q_r|), the boundary piece of the projection.
Mat boundary_piece_jacobian(const Vec& q) {
  const int m = static_cast<int>(q.size()) - 1;
  const double rho = q.tail(m).norm();
  Mat D = Mat::Zero(m + 1, m + 1);
  if (rho == 0.0) return D;
  const Vec w = q.tail(m) / rho;
  D(0, 0) = 1.0;
  D.block(0, 1, 1, m) = w.transpose();
  D.block(1, 0, m, 1) = w;
  D.block(1, 1, m, m) = (1.0 + q(0) / rho) * Mat::Identity(m, m) - (q(0) / rho) * w * w.transpose();
  return 0.5 * D;
}

Mat projection_jacobian(const Vec& q) {
  const int p = static_cast<int>(q.size());
  const double rho = q.tail(p - 1).norm();
  if (rho <= q(0)) return Mat::Identity(p, p);
  if (rho <= -q(0)) return Mat::Zero(p, p);
  return boundary_piece_jacobian(q);
}

struct Target {
  std::function<Vec(const Vec&)> value;
  std::function<Mat(const Vec&)> jacobian;
};

// Damped Gauss-Newton on r(x) = t(g(x)) - g(x).
RestoreResult gauss_newton(const ProblemInstance& inst, Vec x, int max_iter, const Target& target,
                           double tol) {
  RestoreResult out;
  const int p = inst.m + 1;
  for (int it = 0; it <= max_iter; ++it) {
    const MapBundle gx = eval_derivatives(inst.g, x);
    const Vec r = target.value(gx.value) - gx.value;
    out.iterations = it;
    if (r.norm() <= tol * (1.0 + gx.value.norm())) {
      out.converged = true;
      break;
    }
    if (it == max_iter) break;
    const Mat A = (target.jacobian(gx.value) - Mat::Identity(p, p)) * gx.jacobian;
    const Vec step = -solve_min_norm(A, r);
    double t = 1.0;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      const Vec q = inst.g_value(x + t * step);
      if ((target.value(q) - q).norm() < r.norm()) break;
    }
    x += t * step;
  }
  out.x = x;
  out.violation = violation(inst.g_value(x));
  return out;
}

const Target kToCone{[](const Vec& q) { return Vec(project_onto_cone(q)); }, projection_jacobian};
const Target kToVertex{[](const Vec& q) { return Vec(Vec::Zero(q.size())); },
                       [](const Vec& q) { return Mat(Mat::Zero(q.size(), q.size())); }};

// Nearest point of the boundary of Q for q != 0 with a radial part.
Vec boundary_target(const Vec& q) {
  const Vec p = project_onto_cone(q);
  if (psi(q) >= 0.0 && p.norm() > 0.0) return p;
  const int m = static_cast<int>(q.size()) - 1;
  Vec dir = q.tail(m);
  if (dir.norm() == 0.0) dir = Vec::Unit(m, 0);
  dir.normalize();
  const double t = std::max(0.5 * (q(0) + q.tail(m).norm()), 0.0);
  Vec out(m + 1);
  out(0) = t;
  out.tail(m) = t * dir;
  return out;
}

const Target kToBoundary{boundary_target, boundary_piece_jacobian};

// Objective plus linear tilt over the feasible set inside a ball.
struct Tilted {
  const ProblemInstance& inst;
  std::function<ScalarBundle(const Vec&)> obj;
  Vec v;
  Vec center;
  double gamma;

  double phi(const Vec& x) const { return obj(x).value - v.dot(x); }
  Vec grad(const Vec& x) const { return obj(x).gradient - v; }
  bool in_ball(const Vec& x) const { return (x - center).norm() <= gamma * (1.0 + 1e-12); }
  bool feasible(const Vec& x) const { return violation(inst.g_value(x)) <= kFeasTol * (1.0 + x.norm()); }
};

Tilted tilted_problem(const ProblemInstance& inst, const Vec& v, double gamma) {
  return {inst, [&inst](const Vec& x) { return eval_derivatives(inst.f, x); }, v, inst.x_base, gamma};
}

// Feasible point near y inside the ball, if restoration succeeds.
std::optional<Vec> feasible_near(const Tilted& T, Vec y) {
  const Vec& xb = T.center;
  if ((y - xb).norm() > T.gamma) y = xb + T.gamma * (y - xb).normalized();
  if (!T.feasible(y)) {
    const RestoreResult r = restore_feasibility(T.inst, y);
    if (!r.converged) return std::nullopt;
    y = r.x;
  }
  if (!T.in_ball(y)) return std::nullopt;
  return y;
}

// Steepest descent direction, with the outward normal part removed on the boundary stratum.
Vec descent_direction(const Tilted& T, const Vec& x, const Vec& gr) {
  const MapBundle gx = eval_derivatives(T.inst.g, x);
  const Vec& q = gx.value;
  const int m = static_cast<int>(q.size()) - 1;
  const double nr = q.tail(m).norm();
  if (nr <= 1e-12 || psi(q) < -1e-9 * (1.0 + q.norm())) return -gr;
  Vec e(m + 1);
  e(0) = -1.0;
  e.tail(m) = q.tail(m) / nr;
  const Vec nv = gx.jacobian.transpose() * e;
  const double a = gr.dot(nv);
  if (a >= 0.0 || nv.squaredNorm() <= 1e-24) return -gr;
  return -(gr - (a / nv.squaredNorm()) * nv);
}

TiltedSolution projected_gradient(const Tilted& T, const Vec& x0, int max_iter) {
  TiltedSolution out;
  Vec x = x0;
  double val = T.phi(x);
  double s = 1.0 / std::max(1e-3, T.obj(x).hessian.norm());
  double val_ref = val;
  int it = 0;
  for (; it < max_iter; ++it) {
    // Stalled: ten iterations without a relative gain of 1e-10.
    if (it > 0 && it % 10 == 0) {
      if (val_ref - val <= 1e-10 * std::abs(val)) {
        out.converged = true;
        break;
      }
      val_ref = val;
    }
    const Vec gr = T.grad(x);
    const Vec d = descent_direction(T, x, gr);
    if (d.norm() <= 1e-13 * (1.0 + gr.norm())) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    Vec y;
    double vy = 0.0;
    while (s > 1e-16) {
      const Vec trial = x + s * d;
      auto cand = feasible_near(T, trial);
      // A step that restoration bends by more than half its length must stay local and
      // decrease along the displacement it actually made (a gradient projection step).
      if (cand && (*cand - x).norm() <= 2.0 * s * d.norm() + 1e-15) {
        y = *cand;
        vy = T.phi(y);
        const bool bent = (y - trial).norm() > 0.5 * s * d.norm() + 1e-15;
        const double drop = bent ? -1e-4 * gr.dot(y - x) : 1e-4 * s * d.squaredNorm();
        if (drop > 0.0 && vy <= val - drop) {
          accepted = true;
          break;
        }
      }
      s *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    x = y;
    val = vy;
    s *= 2.0;
  }
  out.x = x;
  out.value = val;
  out.iterations = it;
  return out;
}

enum class Stratum { Interior, Boundary, Vertex };

// Newton on the KKT system of the active stratum; empty if it does not settle.
// A direction of negative reduced curvature (a saddle) is stored in escape.
std::optional<Vec> newton_kkt(const Tilted& T, const Vec& x0, Stratum st, Vec* escape) {
  const ProblemInstance& inst = T.inst;
  const int n = inst.n;
  const int p = inst.m + 1;
  Vec x = x0;
  Vec mu;
  double mu1 = 0.0;
  Mat L, C;
  for (int it = 0; it < 40; ++it) {
    const ScalarBundle fx = T.obj(x);
    const MapBundle gx = eval_derivatives(inst.g, x);
    const Vec gphi = fx.gradient - T.v;
    Vec step;
    double res = 0.0;
    if (st == Stratum::Interior) {
      Eigen::LDLT<Mat> ldlt(fx.hessian);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return std::nullopt;
      step = -ldlt.solve(gphi);
      res = gphi.norm();
    } else if (st == Stratum::Boundary) {
      const Vec gr = gx.value.tail(p - 1);
      const double nr = gr.norm();
      if (nr <= 1e-12) return std::nullopt;
      Vec e(p);
      e(0) = -1.0;
      e.tail(p - 1) = gr / nr;
      const Vec dpsi = gx.jacobian.transpose() * e;
      if (dpsi.norm() <= 1e-12) return std::nullopt;
      const Mat Jr = gx.jacobian.bottomRows(p - 1);
      const Vec gh = gr / nr;
      const Mat proj = Mat::Identity(p - 1, p - 1) - gh * gh.transpose();
      const Mat hpsi = gx.weighted_hessian(e) + Jr.transpose() * proj * Jr / nr;
      if (it == 0) mu1 = -gphi.dot(dpsi) / dpsi.squaredNorm();
      Mat K = Mat::Zero(n + 1, n + 1);
      L = fx.hessian + mu1 * hpsi;
      C = dpsi.transpose();
      K.topLeftCorner(n, n) = L;
      K.topRightCorner(n, 1) = dpsi;
      K.bottomLeftCorner(1, n) = dpsi.transpose();
      Vec rhs(n + 1);
      rhs.head(n) = -(gphi + mu1 * dpsi);
      rhs(n) = -(nr - gx.value(0));
      res = rhs.norm();
      const Vec sol = solve_min_norm(K, rhs);
      step = sol.head(n);
      mu1 += sol(n);
    } else {
      if (it == 0) mu = -solve_min_norm(gx.jacobian.transpose(), gphi);
      Mat K = Mat::Zero(n + p, n + p);
      L = fx.hessian + gx.weighted_hessian(mu);
      C = gx.jacobian;
      K.topLeftCorner(n, n) = L;
      K.topRightCorner(n, p) = gx.jacobian.transpose();
      K.bottomLeftCorner(p, n) = gx.jacobian;
      Vec rhs(n + p);
      rhs.head(n) = -(gphi + gx.jacobian.transpose() * mu);
      rhs.tail(p) = -gx.value;
      res = rhs.norm();
      const Vec sol = solve_min_norm(K, rhs);
      step = sol.head(n);
      mu += sol.tail(p);
    }
    if (!step.allFinite()) return std::nullopt;
    x += step;
    if (step.norm() <= 1e-15 * (1.0 + x.norm()) || res <= 1e-15) break;
  }
  if (st == Stratum::Boundary && mu1 < -1e-9) return std::nullopt;
  if (st == Stratum::Vertex) {
    const Vec gphi = T.grad(x);
    const Mat Jx = eval_derivatives(inst.g, x).jacobian;
    if (!dual_contains(mu, 1e-9 * (1.0 + mu.norm()))) return std::nullopt;
    if ((gphi + Jx.transpose() * mu).norm() > 1e-8 * (1.0 + gphi.norm())) return std::nullopt;
  }
  if (!T.in_ball(x)) return std::nullopt;
  if (L.size() > 0 && escape) {
    const EigenPair ep = min_eig_on_subspace(L, null_space(C, 1e-10));
    if (ep.vector.size() > 0 && ep.value < -1e-8 * std::max(1.0, L.norm())) *escape = ep.vector;
  }
  if (!T.feasible(x)) {
    const RestoreResult r = restore_feasibility(inst, x);
    if (!r.converged || (r.x - x).norm() > 1e-9) return std::nullopt;
    x = r.x;
    if (!T.in_ball(x)) return std::nullopt;
  }
  return x;
}

TiltedSolution polish(const Tilted& T, const Vec& x0, int max_iter = 3000) {
  TiltedSolution best;
  Vec start = x0;
  for (int round = 0; round < 4; ++round) {
    best = projected_gradient(T, start, max_iter);
    const double tol = 1e-12 * (1.0 + std::abs(best.value));
    Vec escape;
    for (Stratum st : {Stratum::Interior, Stratum::Boundary, Stratum::Vertex}) {
      Vec e;
      auto x = newton_kkt(T, best.x, st, &e);
      if (!x) continue;
      const double val = T.phi(*x);
      if (val <= best.value + tol) {
        best.x = *x;
        best.value = val;
        best.converged = true;
        escape = e;
      }
    }
    if (escape.size() == 0) break;
    // Saddle: step off along the negative curvature direction and start over.
    const double delta = 1e-2 * std::max((best.x - T.center).norm(), 1e-8);
    std::optional<Vec> next;
    double next_val = best.value;
    for (double sgn : {1.0, -1.0}) {
      auto y = feasible_near(T, best.x + sgn * delta * escape);
      if (y && T.phi(*y) < next_val) {
        next = y;
        next_val = T.phi(*y);
      }
    }
    if (!next) break;
    start = *next;
  }
  best.violation = violation(T.inst.g_value(best.x));
  return best;
}

// ---------------------------------------------------------------------------
// Neighborhood sampling.

struct Sampler {
  const ProblemInstance& inst;
  double kappa;
  double eta;
  NeighborhoodResult& out;
  bool stop;

  bool done() const { return stop && out.witness.has_value(); }

  void consider(double value, const Vec& x, const Vec& xs, const Vec& u, const Vec& lam, const char* stratum) {
    ++out.evaluated;
    out.min_value = std::min(out.min_value, value);
    if (!out.witness && value < 1.0 / kappa) out.witness = NeighborhoodWitness{x, xs, u, lam, value, stratum};
  }

  void interior(const Vec& x, const ScalarBundle& fx) {
    if (fx.gradient.norm() > eta) return;
    const EigenPair ep = min_eig_on_subspace(fx.hessian, Mat::Identity(inst.n, inst.n));
    ++out.interior;
    consider(ep.value, x, fx.gradient, ep.vector, Vec::Zero(inst.m + 1), "interior");
  }

  void boundary(const Vec& x, const ScalarBundle& fx, const MapBundle& gx) {
    const Vec h = hat(gx.value).normalized();
    const Vec a = gx.jacobian.transpose() * h;
    const Vec& gf = fx.gradient;
    // alpha >= 0 with |grad f + alpha a| <= eta: roots of a quadratic.
    std::vector<double> alphas;
    const double A = a.squaredNorm();
    const double B = 2.0 * gf.dot(a);
    const double C = gf.squaredNorm() - eta * eta;
    if (A > 1e-24) {
      const double disc = B * B - 4.0 * A * C;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double lo = (-B - sq) / (2.0 * A);
        const double hi = (-B + sq) / (2.0 * A);
        if (hi >= 0.0) {
          alphas.push_back(std::max(lo, 0.0));
          alphas.push_back(hi);
        }
      }
    } else if (C <= 0.0) {
      alphas.push_back(0.0);
    }
    const bool cap_ok = inst.sigma * std::sqrt(A) >= 1.0;
    const Mat P = A > 1e-24 ? null_space(a.transpose(), inst.tol.tol_rank) : Mat(Mat::Identity(inst.n, inst.n));
    bool counted = false;
    for (double alpha : alphas) {
      if (alpha > 0.0 && !cap_ok) continue;
      const Vec lam = alpha * h;
      const Vec xs = gf + alpha * a;
      Mat F = fx.hessian;
      Mat basis = P;
      if (alpha > 0.0) {
        F += gx.weighted_hessian(lam) + curvature_H(lam, gx, inst.tol.cone());
      } else {
        basis = Mat::Identity(inst.n, inst.n);
      }
      const EigenPair ep = min_eig_on_subspace(F, basis);
      if (ep.vector.size() == 0) continue;
      if (!counted) ++out.boundary;
      counted = true;
      consider(ep.value, x, xs, ep.vector, lam, "boundary");
      if (done()) return;
    }
  }

  void vertex(const Vec& x, const ScalarBundle& fx, const MapBundle& gx, const Vec& xs) {
    const Vec y = xs - fx.gradient;
    const MultiplierSlice S = build_slice(gx.jacobian, y, inst.tol.tol_rank);
    if (S.empty) return;
    if (!feasibility(S).feasible) return;
    const double cap = inst.sigma * y.norm();
    const Mat B = y.norm() > 1e-12 ? null_space(y.transpose(), inst.tol.tol_rank) : Mat(Mat::Identity(inst.n, inst.n));
    const int d = static_cast<int>(B.cols());
    if (d == 0) return;
    ++out.vertex;
    const double jn = std::max(1.0, gx.jacobian.norm());
    const double h = d <= 2 ? 0.1 : 0.3;
    for (const auto& yy : sphere_grid(d, h)) {
      const Vec u = B * yy;
      const Vec q = gx.jacobian * u;
      if (psi(q) > 1e-9 * jn) continue;
      const Vec dd = gx.action_matrix(u) * u;
      const ConeLPResult r = maximize_linear(S, dd, cap);
      if (r.status != LPStatus::Optimal) continue;
      consider(u.dot(fx.hessian * u) + r.value, x, xs, u, r.argmax, "vertex");
      if (done()) return;
    }
  }
};

// A few points of the multiplier set at the base point.
std::vector<Vec> base_multipliers(const ProblemInstance& inst, Rng& rng) {
  std::vector<Vec> out;
  const MultiplierSlice S = multiplier_slice(inst);
  if (S.empty) return out;
  const FeasibilityResult fr = feasibility(S);
  if (!fr.feasible) return out;
  out.push_back(fr.point);
  if (fr.interior && S.dim() > 0) {
    for (int k = 0; k < 16; ++k) {
      if (auto p = slice_boundary_point(S, fr.xi, rng.unit_vector(S.dim()))) out.push_back(*p);
    }
  } else if (S.dim() > 0) {
    for (const auto& hit : boundary_rays(S, true, 1e-9)) out.push_back(hit.point);
  }
  return out;
}

// Lower bound check: no point of the cube (center c, half width hw) within
// radius rho of x has g in Q. Uses a first and second order Taylor bound.
bool certify_empty(const ProblemInstance& inst, const Vec& c, double hw, const Vec& x, double rho,
                   int depth, long& budget) {
  const int n = inst.n;
  Vec gap = ((c - x).cwiseAbs().array() - hw).cwiseMax(0.0).matrix();
  if (gap.norm() > rho) return true;
  if (--budget < 0) return false;
  const MapBundle gc = eval_derivatives(inst.g, c);
  const double delta = hw * std::sqrt(static_cast<double>(n));
  double h2 = 0.0;
  for (const auto& H : gc.hessians) h2 += H.squaredNorm();
  // Factor 2 on the curvature term covers cubic data on small cells.
  const double reach = gc.jacobian.norm() * delta + std::sqrt(h2) * delta * delta;
  if (violation(gc.value) > reach * (1.0 + 1e-9) + 1e-15) return true;
  if (depth == 0) return false;
  const double ch = 0.5 * hw;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Vec cc = c;
    for (int i = 0; i < n; ++i) cc(i) += ((mask >> i) & 1) ? ch : -ch;
    if (!certify_empty(inst, cc, ch, x, rho, depth - 1, budget)) return false;
  }
  return true;
}

}  // namespace

RestoreResult restore_feasibility(const ProblemInstance& inst, const Vec& x, int max_iter) {
  return gauss_newton(inst, x, max_iter, kToCone, 1e-14);
}

SeedCloud make_seed_cloud(const ProblemInstance& inst, double gamma, std::uint64_t seed) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  SeedCloud cloud;
  cloud.gamma = gamma;
  const int n = inst.n;
  const Vec& xb = inst.x_base;
  std::vector<Vec> raw;
  auto cube = [&](double radius, int k) {
    std::vector<int> idx(n, 0);
    while (true) {
      Vec t(n);
      for (int i = 0; i < n; ++i) t(i) = -1.0 + 2.0 * idx[i] / (k - 1);
      if (t.norm() <= 1.0) raw.push_back(xb + radius * t);
      int i = 0;
      while (i < n && ++idx[i] == k) idx[i++] = 0;
      if (i == n) break;
    }
  };
  if (n <= 4) {
    static const int kPerAxis[] = {1, 201, 41, 21, 11};
    static const int kShell[] = {1, 41, 13, 9, 7};
    cloud.spacing = 2.0 * gamma / (kPerAxis[n] - 1);
    cube(gamma, kPerAxis[n]);
    // Coarser copies at smaller radii: small tilts move the minimizer very little.
    for (double r = 0.1 * gamma; r >= 1e-6 * gamma; r *= 0.1) cube(r, kShell[n]);
  } else {
    cloud.heuristic = true;
    Rng rng(seed);
    for (double r = gamma; r >= 1e-6 * gamma; r *= 0.1) {
      for (int i = 0; i < 1000; ++i) raw.push_back(xb + rng.ball(n, r));
    }
    cloud.spacing = gamma * std::pow(1000.0, -1.0 / n);
  }
  cloud.points.push_back(xb);
  for (const auto& p : raw) {
    Vec x = p;
    if (violation(inst.g_value(x)) > kFeasTol * (1.0 + x.norm())) {
      const RestoreResult r = restore_feasibility(inst, x);
      if (!r.converged) continue;
      x = r.x;
    }
    if ((x - xb).norm() <= gamma) cloud.points.push_back(x);
  }
  return cloud;
}

TiltedSolution solve_tilted(const ProblemInstance& inst, const Vec& v_star, const SeedCloud& cloud) {
  const Tilted T = tilted_problem(inst, v_star, cloud.gamma);
  if (cloud.points.empty()) throw NoFeasiblePoint("no feasible point in the localization ball");
  std::vector<std::pair<double, int>> order;
  order.reserve(cloud.points.size());
  for (int i = 0; i < static_cast<int>(cloud.points.size()); ++i) order.push_back({T.phi(cloud.points[i]), i});
  std::sort(order.begin(), order.end());
  std::vector<Vec> seeds;
  for (const auto& [val, i] : order) {
    if (seeds.size() >= 6) break;
    const Vec& c = cloud.points[i];
    bool far = true;
    for (const auto& s : seeds) {
      const double scale = std::max((s - inst.x_base).norm(), (c - inst.x_base).norm());
      far = far && (s - c).norm() > 0.2 * scale;
    }
    if (far) seeds.push_back(c);
  }
  TiltedSolution best;
  best.value = kInf;
  for (const auto& s : seeds) {
    TiltedSolution sol = polish(T, s);
    if (sol.value < best.value) best = sol;
  }
  return best;
}

TiltedSolution solve_tilted(const ProblemInstance& inst, const Vec& v_star, double gamma) {
  return solve_tilted(inst, v_star, make_seed_cloud(inst, gamma, inst.seed));
}

std::vector<Vec> tilt_grid(int n, double r_tilt, int grid_size) {
  std::vector<Vec> out{Vec::Zero(n)};
  if (grid_size <= 1 || r_tilt <= 0.0) return out;
  std::vector<Vec> dirs;
  for (int i = 0; i < n; ++i) dirs.push_back(Vec::Unit(n, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dirs.push_back((Vec::Unit(n, i) + Vec::Unit(n, j)) / std::sqrt(2.0));
      dirs.push_back((Vec::Unit(n, i) - Vec::Unit(n, j)) / std::sqrt(2.0));
    }
  }
  for (const auto& d : dirs) {
    for (int k = 0; k < grid_size; ++k) {
      const double t = -r_tilt + 2.0 * r_tilt * k / (grid_size - 1);
      if (std::abs(t) < 1e-15 * r_tilt) continue;
      out.push_back(t * d);
    }
  }
  return out;
}

TiltExperiment empirical_tilt(const ProblemInstance& inst, double gamma, double r_tilt, int grid_size,
                              std::optional<double> kappa_theory, std::uint64_t seed) {
  TiltExperiment ex;
  ex.gamma = gamma;
  ex.r_tilt = r_tilt;
  ex.grid_size = grid_size;
  if (kappa_theory) ex.kappa_theory = *kappa_theory;
  const SeedCloud cloud = make_seed_cloud(inst, gamma, seed);
  ex.heuristic = cloud.heuristic;
  ex.tilt_grid = tilt_grid(inst.n, r_tilt, grid_size);
  for (const auto& v : ex.tilt_grid) {
    const TiltedSolution sol = solve_tilted(inst, v, cloud);
    ex.solutions.push_back(sol.x);
    ex.degraded = ex.degraded || !sol.converged;
    ex.max_violation = std::max(ex.max_violation, sol.violation);
  }
  ex.base_deviation = (ex.solutions.front() - inst.x_base).norm();
  const int N = static_cast<int>(ex.solutions.size());
  struct Pair {
    double ratio;
    int i, j;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      const double dv = (ex.tilt_grid[i] - ex.tilt_grid[j]).norm();
      if (dv <= 0.0) continue;
      pairs.push_back({(ex.solutions[i] - ex.solutions[j]).norm() / dv, i, j});
      ex.modulus_estimate = std::max(ex.modulus_estimate, pairs.back().ratio);
    }
  }
  ex.grid_modulus = ex.modulus_estimate;

  // Refine the steepest pairs and every pair on the outer ring. Each segment is swept
  // twice with warm starts, continuing the branch of either end. Where the cheaper
  // branch changes, the segment is bisected with both branches as seeds: across a
  // jump the displacement stays put while the segment halves.
  const int top = std::min<int>(kRefinedPairs, static_cast<int>(pairs.size()));
  std::partial_sort(pairs.begin(), pairs.begin() + top, pairs.end(),
                    [](const Pair& a, const Pair& b) { return a.ratio > b.ratio; });
  std::vector<Pair> queue(pairs.begin(), pairs.begin() + top);
  for (auto it = pairs.begin() + top; it != pairs.end(); ++it) {
    const double ri = ex.tilt_grid[it->i].norm(), rj = ex.tilt_grid[it->j].norm();
    if (std::abs(ri - r_tilt) <= 1e-12 * r_tilt && std::abs(rj - r_tilt) <= 1e-12 * r_tilt) queue.push_back(*it);
  }
  auto warm = [&](const Vec& v, const std::vector<Vec>& seeds) {
    const Tilted T = tilted_problem(inst, v, gamma);
    TiltedSolution best;
    best.value = kInf;
    for (const auto& s : seeds) {
      TiltedSolution sol = polish(T, s);
      ++ex.refinements;
      if (sol.value < best.value) best = sol;
    }
    ex.degraded = ex.degraded || !best.converged;
    ex.max_violation = std::max(ex.max_violation, best.violation);
    return best;
  };
  for (const Pair& p : queue) {
    if (ex.modulus_estimate > kJumpRatio) break;
    const Vec& va = ex.tilt_grid[p.i];
    const Vec& vb = ex.tilt_grid[p.j];
    if ((ex.solutions[p.i] - ex.solutions[p.j]).norm() <= 1e-12) continue;
    std::vector<Vec> vs(kSweep + 1), fw(kSweep + 1), bw(kSweep + 1);
    std::vector<double> fv(kSweep + 1), bv(kSweep + 1);
    for (int k = 0; k <= kSweep; ++k) vs[k] = va + (vb - va) * (static_cast<double>(k) / kSweep);
    fw[0] = ex.solutions[p.i];
    fv[0] = tilted_problem(inst, va, gamma).phi(fw[0]);
    for (int k = 1; k <= kSweep; ++k) {
      const TiltedSolution s = warm(vs[k], {fw[k - 1]});
      fw[k] = s.x;
      fv[k] = s.value;
    }
    bw[kSweep] = ex.solutions[p.j];
    bv[kSweep] = tilted_problem(inst, vb, gamma).phi(bw[kSweep]);
    for (int k = kSweep - 1; k >= 0; --k) {
      const TiltedSolution s = warm(vs[k], {bw[k + 1]});
      bw[k] = s.x;
      bv[k] = s.value;
    }
    // Two branches count as distinct beyond 1% of the endpoint solution scale; below
    // that the difference is solver noise.
    const double scale = std::max({r_tilt, (ex.solutions[p.i] - inst.x_base).norm(),
                                   (ex.solutions[p.j] - inst.x_base).norm()});
    const double distinct = 1e-2 * scale;
    std::vector<Vec> win(kSweep + 1);
    for (int k = 0; k <= kSweep; ++k) win[k] = fv[k] <= bv[k] ? fw[k] : bw[k];
    for (int k = 1; k <= kSweep && ex.modulus_estimate <= kJumpRatio; ++k) {
      const bool switched = (fv[k - 1] <= bv[k - 1]) != (fv[k] <= bv[k]);
      if (!switched || (fw[k] - bw[k]).norm() <= distinct || (fw[k - 1] - bw[k - 1]).norm() <= distinct) continue;
      // Each end keeps its own branch; the value difference of the two branches is
      // continuous, so bisecting on its sign brackets the tie.
      Vec a = vs[k - 1], b = vs[k], xa = win[k - 1], xb = win[k];
      while ((a - b).norm() > 1e-6 * r_tilt && ex.modulus_estimate <= kJumpRatio) {
        const Vec mid = 0.5 * (a + b);
        const TiltedSolution sa = warm(mid, {xa}), sb = warm(mid, {xb});
        if ((sa.x - sb.x).norm() <= distinct) break;
        if (sa.value <= sb.value) {
          a = mid;
          xa = sa.x;
        } else {
          b = mid;
          xb = sb.x;
        }
        ex.modulus_estimate = std::max(ex.modulus_estimate, (xa - xb).norm() / (a - b).norm());
      }
    }
  }
  if (ex.base_deviation > 1e-6) {
    ex.unstable = true;
    ex.modulus_estimate = kInf;
  }
  ex.unstable = ex.unstable || ex.modulus_estimate > kJumpRatio;
  return ex;
}

NeighborhoodResult neighborhood_falsify(const ProblemInstance& inst, double kappa, double eta, int samples,
                                        std::uint64_t seed, bool stop_at_witness) {
  if (!(kappa > 0.0) || !(eta > 0.0)) throw std::invalid_argument("kappa and eta must be positive");
  NeighborhoodResult out;
  out.heuristic = inst.n > 4;
  Sampler S{inst, kappa, eta, out, stop_at_witness};
  Rng rng(seed);
  const int n = inst.n;
  const Vec& xb = inst.x_base;
  const Mat Jpinv = pseudo_inverse(inst.J(), inst.tol.tol_rank);
  const double jn = std::max(1.0, inst.J().norm());
  std::vector<Vec> dirs;
  for (const auto& lam : base_multipliers(inst, rng)) {
    if (classify(hat(lam), inst.tol.cone()) == ConeClass::BoundaryNonzero) dirs.push_back(hat(lam).normalized());
  }
  for (int i = 0; i < samples && !S.done(); ++i) {
    const int kind = i % 3;
    Vec x = i == 0 ? xb : Vec(xb + rng.ball(n, eta));
    Vec xs = rng.uniform() < 0.25 ? Vec(Vec::Zero(n)) : rng.ball(n, eta);
    if (kind == 0) {
      if (i > 0) {
        const RestoreResult r = gauss_newton(inst, x, 50, kToVertex, 1e-14);
        if (!r.converged) continue;
        x = r.x;
      } else {
        xs.setZero();
      }
      if ((x - xb).norm() > eta) continue;
      const Vec gv = inst.g_value(x);
      if (gv.norm() > 1e-10) continue;
      S.vertex(x, eval_derivatives(inst.f, x), eval_derivatives(inst.g, x), xs);
    } else if (kind == 1) {
      if (!dirs.empty() && (i / 3) % 2 == 0) {
        // Aim g(x) at a boundary ray dual to a base multiplier.
        const Vec& q = dirs[rng.integer(0, static_cast<int>(dirs.size()) - 1)];
        const Vec target = inst.gb.value + rng.uniform(0.0, eta) * jn * q;
        x = xb + Jpinv * (target - inst.gb.value) + rng.ball(n, 1e-3 * eta);
      }
      const RestoreResult r = gauss_newton(inst, x, 50, kToBoundary, 1e-14);
      if (!r.converged) continue;
      x = r.x;
      if ((x - xb).norm() > eta) continue;
      const MapBundle gx = eval_derivatives(inst.g, x);
      if (classify(gx.value, inst.tol.cone()) != ConeClass::BoundaryNonzero) continue;
      S.boundary(x, eval_derivatives(inst.f, x), gx);
    } else {
      if (violation(inst.g_value(x)) > 0.0) {
        const RestoreResult r = restore_feasibility(inst, x);
        if (!r.converged) continue;
        x = r.x;
      }
      if ((x - xb).norm() > eta) continue;
      if (classify(inst.g_value(x), inst.tol.cone()) != ConeClass::Interior) continue;
      S.interior(x, eval_derivatives(inst.f, x));
    }
  }
  return out;
}

std::vector<LadderStep> neighborhood_ladder(const ProblemInstance& inst, int samples, std::uint64_t seed,
                                            std::vector<double> etas) {
  std::vector<LadderStep> out;
  for (double eta : etas) {
    const NeighborhoodResult r = neighborhood_falsify(inst, kInf, eta, samples, seed, false);
    LadderStep st;
    st.eta = eta;
    st.min_value = r.min_value;
    st.sup_inverse = r.min_value > 0.0 ? 1.0 / r.min_value : kInf;
    out.push_back(st);
  }
  return out;
}

// Local nearest feasible point to x, started from the feasible point y.
Vec nearest_feasible(const ProblemInstance& inst, const Vec& x, const Vec& y) {
  const double r = (y - x).norm();
  const Tilted T{inst,
                 [&x](const Vec& z) {
                   return ScalarBundle{0.5 * (z - x).squaredNorm(), z - x,
                                       Mat::Identity(z.size(), z.size())};
                 },
                 Vec::Zero(x.size()), x, r};
  return polish(T, y, 200).x;
}

MscqResult mscq_falsify(const ProblemInstance& inst, int samples, std::uint64_t seed, double radius) {
  MscqResult out;
  out.heuristic = inst.n > 4;
  Rng rng(seed);
  const Vec& xb = inst.x_base;
  for (int i = 0; i < samples; ++i) {
    const Vec x = xb + rng.ball(inst.n, radius);
    const double d = violation(inst.g_value(x));
    if (d <= kFeasTol) continue;
    ++out.evaluated;
    const RestoreResult r = restore_feasibility(inst, x);
    const double upper = r.converged ? (nearest_feasible(inst, x, r.x) - x).norm() : kInf;
    const double rho = inst.sigma * d;
    if (upper <= rho * (1.0 + 1e-9)) continue;
    if (out.heuristic) {
      ++out.uncertified;
      continue;
    }
    long budget = 200000;
    if (certify_empty(inst, x, rho, x, rho, 8, budget)) {
      out.witness = MscqWitness{x, d, rho};
      return out;
    }
    ++out.uncertified;
  }
  return out;
}

}  // namespace tiltsocp
