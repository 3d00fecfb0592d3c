#include "tiltsocp/cone_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "conic_barrier.hpp"
#include "tiltsocp/lorentz.hpp"
#include "tiltsocp/numeric.hpp"
#include "tiltsocp/problem.hpp"

namespace tiltsocp {

using detail::BarrierProblem;
using detail::PhaseOneStatus;
using detail::SocBlock;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rows of the slice map with row 0 negated: lambda in Q* iff this is in Q.
SocBlock dual_block(const MultiplierSlice& s) {
  SocBlock b;
  b.a = hat(s.offset);
  b.A = s.basis;
  b.A.row(0) *= -1.0;
  return b;
}

SocBlock norm_block(const MultiplierSlice& s, double bound) {
  SocBlock b;
  const int p = s.ambient();
  b.a = Eigen::VectorXd::Zero(p + 1);
  b.a(0) = bound;
  b.a.tail(p) = s.offset;
  b.A = Eigen::MatrixXd::Zero(p + 1, s.dim());
  b.A.bottomRows(p) = s.basis;
  return b;
}

ArgmaxKind kind_of(const Eigen::VectorXd& lambda, double tol) {
  switch (classify(hat(lambda), ConeTolerance{tol, tol, tol})) {
    case ConeClass::Zero:
      return ArgmaxKind::Vertex;
    case ConeClass::Interior:
      return ArgmaxKind::Interior;
    default:
      return ArgmaxKind::BoundaryRay;
  }
}

// Newton on the KKT system of max c^T xi s.t. lambda0 + ||lambda_r|| = 0.
Eigen::VectorXd polish_boundary(const MultiplierSlice& s, const Eigen::VectorXd& ct,
                                Eigen::VectorXd xi) {
  const int k = s.dim();
  const Eigen::MatrixXd& N = s.basis;
  auto residual = [&](const Eigen::VectorXd& x, double mu, Eigen::VectorXd* grad_psi) {
    const Eigen::VectorXd lam = s.point(x);
    const Eigen::VectorXd r = lam.tail(lam.size() - 1);
    Eigen::VectorXd g(lam.size());
    g(0) = 1.0;
    g.tail(r.size()) = r / r.norm();
    const Eigen::VectorXd ng = N.transpose() * g;
    if (grad_psi) *grad_psi = ng;
    Eigen::VectorXd F(k + 1);
    F.head(k) = ct - mu * ng;
    F(k) = lam(0) + r.norm();
    return F;
  };
  Eigen::VectorXd lam = s.point(xi);
  if (lam.tail(lam.size() - 1).norm() < 1e-10) return xi;
  Eigen::VectorXd ng;
  residual(xi, 0.0, &ng);
  if (ng.squaredNorm() < 1e-20) return xi;
  double mu = ct.dot(ng) / ng.squaredNorm();
  if (mu <= 0.0) return xi;
  Eigen::VectorXd F = residual(xi, mu, nullptr);
  for (int it = 0; it < 12; ++it) {
    lam = s.point(xi);
    const Eigen::VectorXd r = lam.tail(lam.size() - 1);
    const double rn = r.norm();
    if (rn < 1e-12) break;
    Eigen::MatrixXd Hpsi = Eigen::MatrixXd::Zero(lam.size(), lam.size());
    Hpsi.bottomRightCorner(r.size(), r.size()) =
        (Eigen::MatrixXd::Identity(r.size(), r.size()) - r * r.transpose() / (rn * rn)) / rn;
    residual(xi, mu, &ng);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k + 1, k + 1);
    K.topLeftCorner(k, k) = -mu * N.transpose() * Hpsi * N;
    K.topRightCorner(k, 1) = -ng;
    K.bottomLeftCorner(1, k) = ng.transpose();
    const Eigen::VectorXd step = K.fullPivLu().solve(-F);
    if (!step.allFinite()) break;
    const Eigen::VectorXd xn = xi + step.head(k);
    const double mn = mu + step(k);
    const Eigen::VectorXd Fn = residual(xn, mn, nullptr);
    if (!(Fn.norm() < F.norm())) break;
    xi = xn;
    mu = mn;
    F = Fn;
    if (F.norm() < 1e-15 * (1.0 + ct.norm())) break;
  }
  return xi;
}

// Active-set polish when the ball |lambda| <= bound is tight: maximize c^T xi on the
// sphere alone (closed form, offset is orthogonal to the basis), or on the sphere
// intersected with the boundary of Q* by Newton on the KKT system.
std::vector<Eigen::VectorXd> polish_sphere(const MultiplierSlice& s, const Eigen::VectorXd& ct,
                                           const Eigen::VectorXd& xi0, double bound) {
  std::vector<Eigen::VectorXd> out;
  const int k = s.dim();
  const double r2 = bound * bound - s.offset.squaredNorm();
  if (r2 <= 0.0 || ct.norm() == 0.0) return out;
  out.push_back(std::sqrt(r2) * ct.normalized());

  const Eigen::MatrixXd& N = s.basis;
  Eigen::VectorXd xi = xi0;
  auto grad1 = [&](const Eigen::VectorXd& x, Eigen::MatrixXd* H) -> Eigen::VectorXd {
    const Eigen::VectorXd lam = s.point(x);
    const Eigen::VectorXd r = lam.tail(lam.size() - 1);
    const double rn = std::max(r.norm(), 1e-300);
    Eigen::VectorXd g(lam.size());
    g(0) = 1.0;
    g.tail(r.size()) = r / rn;
    if (H) {
      Eigen::MatrixXd Hp = Eigen::MatrixXd::Zero(lam.size(), lam.size());
      Hp.bottomRightCorner(r.size(), r.size()) =
          (Eigen::MatrixXd::Identity(r.size(), r.size()) - r * r.transpose() / (rn * rn)) / rn;
      *H = N.transpose() * Hp * N;
    }
    return N.transpose() * g;
  };
  auto residual = [&](const Eigen::VectorXd& x, double m1, double m2) {
    const Eigen::VectorXd lam = s.point(x);
    Eigen::VectorXd F(k + 2);
    F.head(k) = ct - m1 * grad1(x, nullptr) - m2 * x;
    F(k) = lam(0) + lam.tail(lam.size() - 1).norm();
    F(k + 1) = 0.5 * (x.squaredNorm() - r2);
    return F;
  };
  Eigen::MatrixXd G(k, 2);
  G.col(0) = grad1(xi, nullptr);
  G.col(1) = xi;
  const Eigen::Vector2d mu0 = G.completeOrthogonalDecomposition().solve(ct);
  double m1 = mu0(0), m2 = mu0(1);
  Eigen::VectorXd F = residual(xi, m1, m2);
  for (int it = 0; it < 30; ++it) {
    Eigen::MatrixXd H1;
    const Eigen::VectorXd g1 = grad1(xi, &H1);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k + 2, k + 2);
    K.topLeftCorner(k, k) = -m1 * H1 - m2 * Eigen::MatrixXd::Identity(k, k);
    K.block(0, k, k, 1) = -g1;
    K.block(0, k + 1, k, 1) = -xi;
    K.block(k, 0, 1, k) = g1.transpose();
    K.block(k + 1, 0, 1, k) = xi.transpose();
    const Eigen::VectorXd step = K.fullPivLu().solve(-F);
    if (!step.allFinite()) break;
    const Eigen::VectorXd xn = xi + step.head(k);
    const double n1 = m1 + step(k), n2 = m2 + step(k + 1);
    const Eigen::VectorXd Fn = residual(xn, n1, n2);
    if (!(Fn.norm() < F.norm())) break;
    xi = xn;
    m1 = n1;
    m2 = n2;
    F = Fn;
    if (F.norm() < 1e-15 * (1.0 + ct.norm() + bound)) break;
  }
  if (m1 >= 0.0 && m2 >= 0.0) out.push_back(xi);
  return out;
}

// Minimum-norm point of the slice inside Q* (and the optional ball).
std::optional<Eigen::VectorXd> min_norm_point(const MultiplierSlice& s,
                                              const Eigen::VectorXd& xi_start,
                                              std::optional<double> bound, double feas_tol) {
  if (dual_contains(s.offset, 0.0)) return s.offset;
  const int k = s.dim();
  BarrierProblem p;
  p.c = Eigen::VectorXd::Zero(k + 1);
  p.c(k) = -1.0;
  SocBlock cone = dual_block(s);
  cone.A.conservativeResize(Eigen::NoChange, k + 1);
  cone.A.col(k).setZero();
  p.blocks.push_back(cone);
  SocBlock nb = norm_block(s, 0.0);
  nb.A.conservativeResize(Eigen::NoChange, k + 1);
  nb.A.col(k).setZero();
  nb.A(0, k) = 1.0;
  p.blocks.push_back(nb);
  if (bound) {
    SocBlock bb = norm_block(s, *bound);
    bb.A.conservativeResize(Eigen::NoChange, k + 1);
    bb.A.col(k).setZero();
    p.blocks.push_back(bb);
  }
  Eigen::VectorXd y0(k + 1);
  y0.head(k) = xi_start;
  y0(k) = s.point(xi_start).norm() + 1.0;
  if (p.max_violation(y0) >= -feas_tol) return std::nullopt;
  auto res = detail::barrier_maximize(p, y0, 1e-12);
  return s.point(res.y.head(k));
}

double recession_value(const MultiplierSlice& s, const Eigen::VectorXd& ct, double feas_tol);

}  // namespace

const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal:
      return "optimal";
    case LPStatus::Infeasible:
      return "infeasible";
    case LPStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

const char* to_string(ArgmaxKind k) {
  switch (k) {
    case ArgmaxKind::Vertex:
      return "vertex";
    case ArgmaxKind::Interior:
      return "interior";
    case ArgmaxKind::BoundaryRay:
      return "boundary_ray";
  }
  return "?";
}

MultiplierSlice build_slice(const Eigen::MatrixXd& J, const Eigen::VectorXd& c,
                            double tol_rank) {
  const Eigen::MatrixXd Jt = J.transpose();
  MultiplierSlice s;
  s.offset = pseudo_inverse(Jt, tol_rank) * c;
  s.basis = null_space(Jt, tol_rank);
  s.empty = (Jt * s.offset - c).norm() > 1e-9 * (1.0 + c.norm());
  return s;
}

MultiplierSlice make_slice(const Eigen::VectorXd& offset, const Eigen::MatrixXd& directions,
                           double tol_rank) {
  MultiplierSlice s;
  s.basis = range_basis(directions, tol_rank);
  s.offset = offset - s.basis * (s.basis.transpose() * offset);
  return s;
}

std::vector<RayHit> boundary_rays(const MultiplierSlice& s, bool dual, double tol) {
  std::vector<RayHit> hits;
  const int p = s.ambient();
  const int m = p - 1;
  if (m < 1) return hits;
  const Eigen::MatrixXd& N = s.basis;
  const Eigen::VectorXd& o = s.offset;
  const bool through_origin = o.norm() <= tol;
  const double axis = dual ? -1.0 : 1.0;

  auto generator = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd e(p);
    e(0) = axis;
    e.tail(m) = w.normalized();
    return Eigen::VectorXd(e / std::sqrt(2.0));
  };
  auto perp = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return N.cols() ? Eigen::VectorXd(v - N * (N.transpose() * v)) : v;
  };
  // Distance from the slice to the ray through e (or of e to span N when the
  // slice passes through the origin).
  auto distance = [&](const Eigen::VectorXd& w) {
    const Eigen::VectorXd pe = perp(generator(w));
    if (through_origin) return pe.norm();
    const double pn2 = pe.squaredNorm();
    if (pn2 < 1e-30) return o.norm();
    const double alpha = std::max(0.0, pe.dot(o) / pn2);
    return (alpha * pe - o).norm();
  };

  std::vector<Eigen::VectorXd> seeds;
  if (m == 1) {
    seeds = sphere_grid(1, 1.0);
  } else {
    const double h = m == 2 ? 0.02 : (m == 3 ? 0.06 : 0.2);
    auto grid = sphere_grid(m, h);
    std::vector<std::pair<double, int>> scored;
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) scored.push_back({distance(grid[i]), i});
    std::sort(scored.begin(), scored.end());
    for (const auto& [d, i] : scored) {
      if (seeds.size() >= 12) break;
      bool far = true;
      for (const auto& sd : seeds) far = far && (sd - grid[i]).norm() > 4.0 * h;
      if (far) seeds.push_back(grid[i]);
    }
  }
  const double accept = tol * (1.0 + o.norm());
  for (const auto& seed : seeds) {
    Eigen::VectorXd w = seed;
    double dist = distance(w);
    if (m > 1) {
      auto res = sphere_minimize(distance, seed, 0.02, 3000);
      w = res.x;
      dist = res.value;
    }
    if (dist > accept) continue;
    RayHit hit;
    hit.generator = generator(w);
    const Eigen::VectorXd pe = perp(hit.generator);
    if (through_origin) {
      hit.whole_ray = true;
      hit.point = Eigen::VectorXd::Zero(p);
    } else {
      const double alpha = std::max(0.0, pe.dot(o) / std::max(pe.squaredNorm(), 1e-300));
      hit.point = alpha * hit.generator;
    }
    bool dup = false;
    for (const auto& h : hits) dup = dup || (h.generator - hit.generator).norm() < 1e-6;
    if (!dup) hits.push_back(hit);
  }
  return hits;
}

namespace {

double recession_value(const MultiplierSlice& s, const Eigen::VectorXd& ct, double feas_tol) {
  const int k = s.dim();
  MultiplierSlice rec = s;
  rec.offset.setZero();
  BarrierProblem p;
  p.c = ct;
  p.blocks.push_back(dual_block(rec));
  p.blocks.push_back(norm_block(rec, 1.0));
  auto ph = detail::phase_one(p, Eigen::VectorXd::Zero(k), 2.0, feas_tol);
  if (ph.status == PhaseOneStatus::Interior) {
    return detail::barrier_maximize(p, ph.y, 1e-12).value;
  }
  double best = 0.0;
  for (const auto& hit : boundary_rays(rec, true, 1e-9)) {
    best = std::max(best, ct.dot(s.basis.transpose() * hit.generator));
  }
  return best;
}

}  // namespace

ConeLPResult maximize_linear(const MultiplierSlice& s, const Eigen::VectorXd& d,
                             std::optional<double> bound, const ConeSolverOptions& opt) {
  ConeLPResult out;
  if (s.empty) return out;
  const int k = s.dim();
  const double scale = 1.0 + s.offset.norm();
  const double tol = opt.feas_tol * scale;
  auto finish = [&](const Eigen::VectorXd& lam, bool face) {
    out.status = LPStatus::Optimal;
    out.argmax = lam;
    out.value = lam.dot(d);
    out.active = kind_of(lam, opt.feas_tol);
    out.face = face;
    return out;
  };
  auto in_bound = [&](const Eigen::VectorXd& lam) {
    return !bound || lam.norm() <= *bound + tol;
  };

  if (k == 0) {
    if (dual_contains(s.offset, tol) && in_bound(s.offset)) return finish(s.offset, false);
    return out;
  }

  BarrierProblem p;
  const Eigen::VectorXd ct = s.basis.transpose() * d;
  p.c = ct;
  p.blocks.push_back(dual_block(s));
  if (bound) p.blocks.push_back(norm_block(s, *bound));
  const double radius = 1e6 * scale + (bound ? *bound : 0.0);
  auto ph = detail::phase_one(p, Eigen::VectorXd::Zero(k), radius, tol);

  const double cscale = d.norm();
  const bool flat = ct.norm() <= 1e-13 * (1.0 + cscale);

  if (ph.status == PhaseOneStatus::Infeasible) return out;

  if (ph.status == PhaseOneStatus::BoundaryOnly) {
    // The slice meets Q* only inside one proper face: the vertex or a ray.
    struct Cand {
      Eigen::VectorXd lam;
      double value;
      bool face;
    };
    std::vector<Cand> cands;
    if (s.offset.norm() <= tol) cands.push_back({Eigen::VectorXd::Zero(s.ambient()), 0.0, false});
    for (const auto& hit : boundary_rays(s, true, opt.feas_tol)) {
      if (!hit.whole_ray) {
        if (in_bound(hit.point)) cands.push_back({hit.point, hit.point.dot(d), false});
        continue;
      }
      const double slope = hit.generator.dot(d);
      if (slope > 1e-12 * (1.0 + cscale)) {
        if (!bound) {
          out.status = LPStatus::Unbounded;
          out.value = kInf;
          out.argmax = hit.generator;
          return out;
        }
        cands.push_back({*bound * hit.generator, *bound * slope, false});
      } else {
        cands.push_back({Eigen::VectorXd::Zero(s.ambient()), 0.0, std::abs(slope) <= 1e-12});
      }
    }
    if (cands.empty()) return out;
    auto best = std::min_element(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
      if (std::abs(a.value - b.value) > 1e-12 * (1.0 + cscale)) return a.value > b.value;
      return a.lam.norm() < b.lam.norm();
    });
    return finish(best->lam, best->face);
  }

  // Interior case.
  if (!bound && !flat && recession_value(s, ct, opt.feas_tol) > 1e-9 * ct.norm()) {
    out.status = LPStatus::Unbounded;
    out.value = kInf;
    return out;
  }
  if (flat) {
    if (opt.value_only) return finish(s.point(ph.y), true);
    auto mn = min_norm_point(s, ph.y, bound, tol);
    return finish(mn ? *mn : s.point(ph.y), true);
  }

  BarrierProblem q = p;
  if (!bound) q.blocks.push_back(norm_block(s, radius));
  auto res = detail::barrier_maximize(q, ph.y, opt.gap_tol);
  Eigen::VectorXd xi = res.y;
  const bool bound_active = bound && s.point(xi).norm() > *bound - 1e-6 * (1.0 + *bound);
  if (!bound_active) {
    Eigen::VectorXd pol = polish_boundary(s, ct, xi);
    const Eigen::VectorXd lam = s.point(pol);
    if (dual_contains(lam, tol) && ct.dot(pol) >= ct.dot(xi) - 1e-12 * (1.0 + std::abs(ct.dot(xi)))) {
      xi = pol;
    }
  }
  if (bound) {
    for (const Eigen::VectorXd& cand : polish_sphere(s, ct, xi, *bound)) {
      const Eigen::VectorXd l = s.point(cand);
      if (dual_contains(l, tol) && in_bound(l) && ct.dot(cand) > ct.dot(xi)) xi = cand;
    }
  }
  Eigen::VectorXd lam = s.point(xi);
  if (!bound_active && !opt.value_only && lam.norm() > tol) {
    // A ray of Q* inside the slice direction set makes the argmax a face
    // reaching the origin.
    const Eigen::VectorXd e = lam.normalized();
    const Eigen::VectorXd pe = e - s.basis * (s.basis.transpose() * e);
    if (pe.norm() <= 1e-9 && std::abs(e.dot(d)) <= 1e-9 * (1.0 + cscale)) {
      return finish(Eigen::VectorXd::Zero(s.ambient()), true);
    }
  }
  return finish(lam, false);
}

FeasibilityResult feasibility(const MultiplierSlice& s, const ConeSolverOptions& opt) {
  FeasibilityResult out;
  if (s.empty) return out;
  const double tol = opt.feas_tol * (1.0 + s.offset.norm());
  if (s.dim() == 0) {
    out.feasible = dual_contains(s.offset, tol);
    if (out.feasible) out.point = s.offset;
    return out;
  }
  BarrierProblem p;
  p.c = Eigen::VectorXd::Zero(s.dim());
  p.blocks.push_back(dual_block(s));
  auto ph = detail::phase_one(p, Eigen::VectorXd::Zero(s.dim()), 1e6 * (1.0 + s.offset.norm()), tol);
  if (ph.status == PhaseOneStatus::Interior) {
    out.feasible = true;
    out.interior = true;
    out.xi = ph.y;
    out.point = s.point(ph.y);
    return out;
  }
  if (ph.status == PhaseOneStatus::Infeasible) return out;
  if (s.offset.norm() <= tol) {
    out.feasible = true;
    out.point = Eigen::VectorXd::Zero(s.ambient());
    return out;
  }
  for (const auto& hit : boundary_rays(s, true, opt.feas_tol)) {
    out.feasible = true;
    out.point = hit.point;
    return out;
  }
  return out;
}

std::optional<Eigen::VectorXd> slice_boundary_point(const MultiplierSlice& s,
                                                    const Eigen::VectorXd& xi,
                                                    const Eigen::VectorXd& dir) {
  // In hat coordinates z(r) = zc + r * dz must leave Q through z0^2 = ||z_r||^2.
  const Eigen::VectorXd zc = hat(s.point(xi));
  const Eigen::VectorXd dz = hat(Eigen::VectorXd(s.basis * dir));
  const int m = static_cast<int>(zc.size()) - 1;
  const double a = dz(0) * dz(0) - dz.tail(m).squaredNorm();
  const double b = 2.0 * (zc(0) * dz(0) - zc.tail(m).dot(dz.tail(m)));
  const double c = zc(0) * zc(0) - zc.tail(m).squaredNorm();
  double r = kInf;
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  if (std::abs(a) <= 1e-14 * scale) {
    if (b < 0.0) r = -c / b;
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double qq = -0.5 * (b + std::copysign(sq, b));
      for (double root : {qq / a, qq != 0.0 ? c / qq : kInf}) {
        if (root > 0.0 && root < r) r = root;
      }
    }
  }
  if (!std::isfinite(r)) return std::nullopt;
  Eigen::VectorXd lam = s.point(xi + r * dir);
  // Put the point exactly on the boundary.
  const double rn = lam.tail(m).norm();
  lam(0) = -rn;
  return lam;
}

ProbeResult out_of_kernel_probe(const ProblemInstance& inst) {
  ProbeResult out;
  const int n = inst.n;
  const Eigen::VectorXd& gf = inst.grad_f();
  const Eigen::MatrixXd P = gf.norm() <= inst.tol.tol_zero
                                ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n))
                                : null_space(gf.transpose(), inst.tol.tol_rank);
  out.u_bar = Eigen::VectorXd::Zero(n);
  if (P.cols() == 0) return out;
  const Eigen::MatrixXd M = inst.J() * P;
  const double jscale = std::max(1.0, inst.J().norm());
  if (M.norm() <= 1e-12 * jscale) return out;

  const int k = static_cast<int>(P.cols());
  BarrierProblem p;
  p.c = M.row(0).transpose();
  p.blocks.push_back({Eigen::VectorXd::Zero(M.rows()), M});
  SocBlock ball;
  ball.a = Eigen::VectorXd::Zero(k + 1);
  ball.a(0) = 1.0;
  ball.A = Eigen::MatrixXd::Zero(k + 1, k);
  ball.A.bottomRows(k).setIdentity();
  p.blocks.push_back(ball);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  double value = 0.0;
  auto ph = detail::phase_one(p, Eigen::VectorXd::Zero(k), 2.0, 1e-12);
  if (ph.status == PhaseOneStatus::Interior) {
    auto res = detail::barrier_maximize(p, ph.y, 1e-12);
    beta = res.y;
    value = res.value;
  } else {
    // range(M) meets Q only along rays: each ray direction e gives the
    // minimum-norm preimage beta = M^+ e, scaled into the unit ball.
    const MultiplierSlice range = make_slice(Eigen::VectorXd::Zero(M.rows()), M, inst.tol.tol_rank);
    const Eigen::MatrixXd Mp = pseudo_inverse(M, inst.tol.tol_rank);
    for (const auto& hit : boundary_rays(range, false, 1e-9)) {
      const Eigen::VectorXd b = Mp * hit.generator;
      if (b.norm() < 1e-300) continue;
      const double v = hit.generator(0) / b.norm();
      if (v > value) {
        value = v;
        beta = b / b.norm();
      }
    }
  }
  out.value = value;
  out.out_of_kernel = value > 1e-8 * jscale;
  if (out.out_of_kernel) out.u_bar = (P * beta).normalized();
  return out;
}

}  // namespace tiltsocp
