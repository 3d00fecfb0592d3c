#include "tiltsocp/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "tiltsocp/errors.hpp"
#include "tiltsocp/lorentz.hpp"
#include "tiltsocp/numeric.hpp"

namespace tiltsocp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMatchTol = 1e-8;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Arc spacing actually used on a sphere of the given dimension.
double grid_step(int dim, double h) {
  if (dim <= 2) return h;
  if (dim == 3) return std::max(h, 0.05);
  return std::max(h, 0.3);
}

struct Scored {
  double value;
  Vec y;
};

// Best entries that are pairwise farther apart than sep (up to sign when half).
std::vector<Vec> spread_seeds(std::vector<Scored> all, int count, double sep, bool half) {
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) { return a.value < b.value; });
  std::vector<Vec> out;
  for (const auto& s : all) {
    if (static_cast<int>(out.size()) >= count) break;
    if (!std::isfinite(s.value)) break;
    bool far = true;
    for (const auto& o : out) {
      double d = (o - s.y).norm();
      if (half) d = std::min(d, (o + s.y).norm());
      far = far && d > sep;
    }
    if (far) out.push_back(s.y);
  }
  return out;
}

Vec half_action(const ProblemInstance& inst, const Vec& v) {
  return 0.5 * second_order_action(inst.gb, v, v);
}

Mat kernel_basis(const ProblemInstance& inst) {
  Mat A(inst.J().rows() + 1, inst.n);
  A.topRows(inst.J().rows()) = inst.J();
  A.bottomRows(1) = inst.grad_f().transpose();
  return null_space(A, inst.tol.tol_rank);
}

// Smallest value of u^T F u over unit u in span(P), with P orthonormal.
EigenPair restricted_min(const Mat& F, const Mat& P) { return min_eig_on_subspace(F, P); }

// Minimizes f over the unit sphere in R^d: grid, then local refinement of
// the best seeds. Returns the best point found.
Scored sphere_search(int d, double h, bool half, int budget,
                     const std::function<double(const Vec&)>& f,
                     std::vector<Scored>* grid_values = nullptr) {
  Scored best{kInf, Vec::Zero(d)};
  if (d == 0) return best;
  const double step = grid_step(d, h);
  std::vector<Scored> all;
  for (const auto& y : sphere_grid(d, step, half)) {
    const double val = f(y);
    all.push_back({val, y});
    if (val < best.value) best = {val, y};
  }
  if (d >= 2) {
    for (const auto& seed : spread_seeds(all, budget, 2.0 * step, half)) {
      auto res = sphere_minimize(f, seed, 0.5 * step, 1500);
      if (res.value < best.value) best = {res.value, res.x.normalized()};
    }
  }
  if (grid_values) *grid_values = std::move(all);
  return best;
}

// ---------------------------------------------------------------------------
// Boundary part of the multiplier set.

struct LambdaFamily {
  MultiplierSlice slice;
  bool interior = false;
  Vec xi;
  /// Boundary points when the slice misses the interior of Q*.
  std::vector<Vec> fixed;

  int k() const { return slice.dim(); }
  std::optional<Vec> at(const Vec& theta) const {
    return slice_boundary_point(slice, xi, theta);
  }
};

LambdaFamily lambda_family(const ProblemInstance& inst) {
  LambdaFamily fam;
  fam.slice = multiplier_slice(inst);
  const FeasibilityResult fr = feasibility(fam.slice);
  if (!fr.feasible) return fam;
  const ConeTolerance ct = inst.tol.cone();
  if (fr.interior && fam.k() > 0) {
    fam.interior = true;
    fam.xi = fr.xi;
    return fam;
  }
  if (fam.k() == 0) {
    if (classify(hat(fam.slice.offset), ct) == ConeClass::BoundaryNonzero) fam.fixed.push_back(fam.slice.offset);
    return fam;
  }
  for (const auto& hit : boundary_rays(fam.slice, true, 1e-9)) {
    if (hit.point.norm() > inst.tol.tol_zero) fam.fixed.push_back(hit.point);
  }
  return fam;
}

// Points of the multiplier set used when lambda ranges freely over it.
std::vector<Vec> lambda_samples(const LambdaFamily& fam, double h) {
  std::vector<Vec> out;
  if (!fam.interior) {
    out = fam.fixed;
    if (fam.k() == 0 && out.empty()) out.push_back(fam.slice.offset);
    return out;
  }
  const Vec center = fam.slice.point(fam.xi);
  out.push_back(center);
  for (const auto& th : sphere_grid(fam.k(), grid_step(fam.k(), 2.0 * h))) {
    if (auto p = fam.at(th)) {
      out.push_back(*p);
    } else {
      // Recession direction: the set is unbounded along it.
      for (double r : {10.0, 100.0, 1000.0}) out.push_back(fam.slice.point(fam.xi + r * th));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The in-kernel set, stratum by stratum.

struct BMatch {
  double r = kInf;
  double t = 0.0;
  bool t_free = false;
  Vec lambda, theta;
};

// Given boundary lambda and c(v), finds t > 0 with t (1, omega) - c in range J.
BMatch match_boundary(const Vec& lambda, const Vec& c, const Mat& N) {
  BMatch out;
  out.lambda = lambda;
  const int m = static_cast<int>(lambda.size()) - 1;
  if (!(lambda(0) < 0.0)) return out;
  Vec e(m + 1);
  e(0) = 1.0;
  e.tail(m) = lambda.tail(m) / (-lambda(0));
  const double scale = 1.0 + c.norm();
  if (N.cols() == 0) {
    out.r = 0.0;
    out.t_free = true;
    return out;
  }
  const Vec ne = N.transpose() * e;
  const Vec nc = N.transpose() * c;
  if (ne.norm() <= 1e-10) {
    out.t_free = true;
    out.r = nc.norm() / scale;
    return out;
  }
  const double t = ne.dot(nc) / ne.squaredNorm();
  out.t = t;
  out.r = (std::max(t, 0.0) * ne - nc).norm() / scale;
  if (t <= 1e-9 * scale) out.r = std::max(out.r, 1e-9 * scale - t + kMatchTol);
  return out;
}

struct ZCandidate {
  QuadrupleZ quad;
  double value = kInf;  ///< stratum expression at quad.u
  bool chi3 = false;    ///< true for the q != 0 expression, false for rho = 0
  bool limit_only = false;
};

struct ZRun {
  Chi23 res;
  std::vector<ZCandidate> cands;
};

class ZSearcher {
 public:
  ZSearcher(const ProblemInstance& inst, const AnalyzerOptions& opt)
      : inst_(inst), opt_(opt), Kv_(null_space(inst.J(), inst.tol.tol_rank)),
        N_(null_space(inst.J().transpose(), inst.tol.tol_rank)),
        Jpinv_(pseudo_inverse(inst.J(), inst.tol.tol_rank)) {}

  ZRun run() {
    ZRun out;
    if (Kv_.cols() == 0) return out;
    if (inst_.grad_f().norm() <= inst_.tol.tol_zero) {
      zero_gradient(out);
    } else {
      fam_ = lambda_family(inst_);
      stratum_boundary(out);
      stratum_vertex(out);
    }
    out.res.quadruples = static_cast<int>(out.cands.size());
    return out;
  }

 private:
  const ProblemInstance& inst_;
  AnalyzerOptions opt_;
  Mat Kv_, N_, Jpinv_;
  LambdaFamily fam_;

  int d() const { return static_cast<int>(Kv_.cols()); }
  Vec v_of(const Vec& y) const { return Kv_ * y.normalized(); }

  double scale_of(const Mat& F, const Mat& R) const {
    return std::max({1.0, F.norm(), R.norm()});
  }

  void record(ZRun& out, const ZCandidate& c) {
    out.cands.push_back(c);
    ChiResult& chi = c.chi3 ? out.res.chi3 : out.res.chi2;
    ++chi.candidates;
    if (c.value < chi.value) {
      chi.value = c.value;
      chi.limit_only = c.limit_only;
      chi.cert = {true, c.quad.u, c.quad.lambda, c.quad.v, c.quad.w};
    }
  }

  // chi3 expression minimized over u for a stratum-B pair; also the rho = 0 part.
  void evaluate_pair(ZRun& out, const Vec& lambda, const Vec& v, const BMatch& mt) {
    const Mat P = u_subspace(inst_, lambda);
    const Mat F = lagrangian_hessian(inst_, lambda);
    const RhoForm rf = rho_form(inst_, lambda, v);
    if (!rf.valid) return;
    const Vec c = half_action(inst_, v);
    const int m = inst_.m;
    Vec e(m + 1);
    e(0) = 1.0;
    e.tail(m) = lambda.tail(m) / (-lambda(0));
    const double t = mt.t_free ? 1.0 : mt.t;
    const Vec w = Jpinv_ * (t * e - c);
    {
      ZCandidate zc;
      zc.chi3 = true;
      EigenPair ep = mt.t_free ? restricted_min(F, P) : restricted_min(F + rf.R / mt.t, P);
      if (ep.vector.size() == 0) return;
      zc.value = ep.value;
      zc.limit_only = mt.t_free;
      zc.quad = make_quadruple(inst_, ep.vector, lambda, v, w);
      record(out, zc);
    }
    rho_zero_candidates(out, lambda, v, w, P, F, rf.R);
  }

  // Minimum of u^T F u over unit u in span(P) with rho(u) = u^T R u = 0.
  void rho_zero_candidates(ZRun& out, const Vec& lambda, const Vec& v, const Vec& w,
                           const Mat& P, const Mat& F, const Mat& R) {
    if (P.cols() == 0) return;
    const double sc = scale_of(F, R);
    Mat Rp = P.transpose() * R * P;
    Rp = 0.5 * (Rp + Rp.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(Rp);
    int kdim = 0;
    while (kdim < Rp.rows() && es.eigenvalues()(kdim) <= 1e-9 * sc) ++kdim;
    if (kdim > 0) {
      const Mat Pk = P * es.eigenvectors().leftCols(kdim);
      const EigenPair ep = restricted_min(F, Pk);
      ZCandidate zc;
      zc.value = ep.value;
      zc.quad = make_quadruple(inst_, ep.vector, lambda, v, w);
      record(out, zc);
      return;
    }
    // Penalized minimizer; kept only if it actually sits in the rho = 0 set.
    const EigenPair ep = restricted_min(F + 1e6 * R, P);
    if (ep.vector.dot(R * ep.vector) <= 1e-9 * sc) {
      ZCandidate zc;
      zc.value = ep.vector.dot(F * ep.vector);
      zc.quad = make_quadruple(inst_, ep.vector, lambda, v, w);
      record(out, zc);
    }
  }

  // All boundary multipliers matching v (local solves from the grid or a warm start).
  std::vector<BMatch> matches_for(const Vec& v, const Vec* warm) const {
    std::vector<BMatch> out;
    const Vec c = half_action(inst_, v);
    if (!fam_.interior) {
      for (const auto& lam : fam_.fixed) {
        BMatch mt = match_boundary(lam, c, N_);
        if (mt.r <= kMatchTol) out.push_back(mt);
      }
      return out;
    }
    const int k = fam_.k();
    auto resid = [&](const Vec& th) {
      auto lam = fam_.at(th.normalized());
      if (!lam) return 1e3;
      return match_boundary(*lam, c, N_).r;
    };
    std::vector<Vec> seeds;
    if (k == 1) {
      seeds = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
    } else if (warm) {
      seeds.push_back(*warm);
    } else {
      std::vector<Scored> all;
      const double step = grid_step(k, 2.0 * opt_.grid_h);
      for (const auto& th : sphere_grid(k, step)) all.push_back({resid(th), th});
      seeds = spread_seeds(all, 3, 3.0 * step, false);
    }
    for (const auto& s : seeds) {
      Vec th = s;
      if (k >= 2) th = sphere_minimize(resid, s, warm ? 0.01 : 0.05, 1500).x.normalized();
      auto lam = fam_.at(th);
      if (!lam) continue;
      BMatch mt = match_boundary(*lam, c, N_);
      mt.theta = th;
      if (mt.r > kMatchTol) continue;
      bool dup = false;
      for (const auto& o : out) dup = dup || (o.lambda - mt.lambda).norm() < 1e-7;
      if (!dup) out.push_back(mt);
    }
    return out;
  }

  double chi3_value(const Vec& lambda, const Vec& v, const BMatch& mt) const {
    const Mat P = u_subspace(inst_, lambda);
    const Mat F = lagrangian_hessian(inst_, lambda);
    if (mt.t_free) return restricted_min(F, P).value;
    const RhoForm rf = rho_form(inst_, lambda, v);
    return restricted_min(F + rf.R / mt.t, P).value;
  }

  // q on the boundary of Q away from the vertex: lambda on the ray of hat(q).
  void stratum_boundary(ZRun& out) {
    if (!fam_.interior && fam_.fixed.empty()) return;
    struct Seed {
      double value;
      Vec y, theta;
    };
    std::vector<Seed> seeds;
    const double step = grid_step(d(), opt_.grid_h);
    for (const auto& y : sphere_grid(d(), step, true)) {
      const Vec v = v_of(y);
      for (const auto& mt : matches_for(v, nullptr)) {
        evaluate_pair(out, mt.lambda, v, mt);
        seeds.push_back({chi3_value(mt.lambda, v, mt), y, mt.theta});
      }
    }
    if (d() < 2) return;
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.value < b.value; });
    std::vector<Vec> used;
    for (const auto& s : seeds) {
      if (static_cast<int>(used.size()) >= opt_.budget) break;
      bool far = true;
      for (const auto& u : used) far = far && std::min((u - s.y).norm(), (u + s.y).norm()) > 2.0 * step;
      if (!far) continue;
      used.push_back(s.y);
      Vec theta = s.theta;
      auto f = [&](const Vec& y) {
        const Vec v = v_of(y);
        const Vec* warm = theta.size() ? &theta : nullptr;
        auto ms = matches_for(v, warm);
        if (ms.empty()) return s.value + 1.0;
        if (ms.front().theta.size()) theta = ms.front().theta;
        return chi3_value(ms.front().lambda, v, ms.front());
      };
      auto res = sphere_minimize(f, s.y, 0.5 * step, 1500);
      const Vec v = v_of(res.x);
      const Vec* warm = theta.size() ? &theta : nullptr;
      for (const auto& mt : matches_for(v, warm)) evaluate_pair(out, mt.lambda, v, mt);
    }
  }

  // Directions v in ker J with c(v) in range J (q = 0 is then reachable).
  std::vector<Vec> vertex_directions() const {
    std::vector<Vec> out;
    const double step = grid_step(d(), opt_.grid_h);
    if (N_.cols() == 0) {
      for (const auto& y : sphere_grid(d(), step, true)) out.push_back(v_of(y));
      return out;
    }
    auto a = [&](const Vec& y) {
      const Vec c = half_action(inst_, v_of(y));
      return (N_.transpose() * c).norm() / (1.0 + c.norm());
    };
    std::vector<Scored> all;
    for (const auto& y : sphere_grid(d(), step, true)) all.push_back({a(y), y});
    std::vector<Vec> seeds = spread_seeds(all, std::max(opt_.budget, 4), 2.0 * step, true);
    for (const auto& s : seeds) {
      Vec y = s;
      double val = a(y);
      if (d() >= 2) {
        auto res = sphere_minimize(a, s, 0.5 * step, 2000);
        y = res.x.normalized();
        val = res.value;
      }
      if (val > 1e-9) continue;
      const Vec v = v_of(y);
      bool dup = false;
      for (const auto& o : out) dup = dup || std::min((o - v).norm(), (o + v).norm()) < 1e-6;
      if (!dup) out.push_back(v);
    }
    return out;
  }

  void check_two_regularity(ZRun& out, const std::vector<Vec>& vs) {
    for (const auto& v : vs) {
      ++out.res.two_regular_checked;
      const bool ok = two_regular(inst_, v);
      if (!ok) {
        out.res.two_regularity = TwoRegularity::Fails;
      } else if (out.res.two_regularity == TwoRegularity::NotApplicable) {
        out.res.two_regularity = TwoRegularity::Ok;
      }
    }
  }

  // q = 0: lambda free in the multiplier set; only the rho = 0 expression applies.
  void stratum_vertex(ZRun& out) {
    const std::vector<Vec> vs = vertex_directions();
    check_two_regularity(out, vs);
    if (vs.empty()) return;
    const std::vector<Vec> lams = lambda_samples(fam_, opt_.grid_h);
    for (const auto& v : vs) {
      const Vec w = Jpinv_ * (-half_action(inst_, v));
      for (const auto& lam : lams) {
        const RhoForm rf = rho_form(inst_, lam, v);
        if (!rf.valid) continue;
        rho_zero_candidates(out, lam, v, w, u_subspace(inst_, lam), lagrangian_hessian(inst_, lam), rf.R);
      }
    }
  }

  // grad f = 0: the only multiplier is 0, rho vanishes, u ranges over the sphere.
  void zero_gradient(ZRun& out) {
    const int n = inst_.n;
    const Mat I = Mat::Identity(n, n);
    const EigenPair ep = restricted_min(inst_.fb.hessian, I);
    const Vec zero = Vec::Zero(inst_.m + 1);
    Mat Jhat = inst_.J();
    Jhat.row(0) *= -1.0;
    Vec obj = Vec::Zero(inst_.m + 1);
    obj(0) = -1.0;
    bool have2 = false;
    bool have3 = false;
    const double step = grid_step(d(), opt_.grid_h);
    for (const auto& y : sphere_grid(d(), step, true)) {
      if (have2 && have3) break;
      const Vec v = v_of(y);
      const Vec c = half_action(inst_, v);
      // q = c + J w in Q, written as hat(q) in Q*; the objective is q0.
      const MultiplierSlice s = make_slice(hat(c), Jhat, inst_.tol.tol_rank);
      ConeSolverOptions o;
      o.value_only = true;
      const ConeLPResult r = maximize_linear(s, obj, 10.0 * (1.0 + c.norm()), o);
      if (r.status != LPStatus::Optimal) continue;
      const Vec q = hat(r.argmax);
      const Vec w = Jpinv_ * (q - c);
      ZCandidate zc;
      zc.value = ep.value;
      zc.quad = make_quadruple(inst_, ep.vector, zero, v, w);
      if (!have2) {
        record(out, zc);
        have2 = true;
      }
      if (!have3 && r.value > 1e-9 * (1.0 + c.norm())) {
        zc.chi3 = true;
        record(out, zc);
        have3 = true;
      }
    }
    check_two_regularity(out, vertex_directions());
  }
};

}  // namespace

const char* to_string(CaseTag c) { return c == CaseTag::InKernel ? "in_kernel" : "out_of_kernel"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::TiltStable:
      return "TILT_STABLE";
    case Verdict::NotTiltStable:
      return "NOT_TILT_STABLE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(TwoRegularity t) {
  switch (t) {
    case TwoRegularity::Ok:
      return "ok";
    case TwoRegularity::Fails:
      return "fails";
    case TwoRegularity::NotApplicable:
      return "not_applicable";
  }
  return "?";
}

CaseResult classify_case(const ProblemInstance& inst) {
  CaseResult out;
  out.probe = out_of_kernel_probe(inst);
  out.tag = out.probe.out_of_kernel ? CaseTag::OutOfKernel : CaseTag::InKernel;
  return out;
}

AnalysisVerdict out_kernel_check(const ProblemInstance& inst, const ProbeResult& probe) {
  AnalysisVerdict out;
  out.case_tag = CaseTag::OutOfKernel;
  out.u_bar = probe.u_bar;
  out.heuristic = inst.n > 4 || inst.m + 1 > 4;
  const double margin = inst.tol.margin_strict;
  try {
    out.lambda_bar = lambda_bar(inst, probe.u_bar);
  } catch (const DegenerateScaling& e) {
    out.verdict = Verdict::Inconclusive;
    out.reason = e.what();
    return out;
  }
  const Mat P = u_subspace(inst, out.lambda_bar);
  const EigenPair ep = min_eig_on_subspace(lagrangian_hessian(inst, out.lambda_bar), P);
  out.out_min = ep.value;
  out.diagnostics["out_kernel_min"] = ep.value;
  out.diagnostics["u_set_dim"] = static_cast<double>(P.cols());
  if (P.cols() > 0) out.witness = {true, ep.vector, out.lambda_bar, Vec(), Vec()};
  if (ep.value > margin) {
    out.verdict = Verdict::TiltStable;
    if (std::isinf(ep.value)) {
      out.bound_estimate = 0.0;
      out.infimum_not_attained = true;
      out.reason = "empty u-set: every modulus works";
    } else {
      out.bound_estimate = 1.0 / ep.value;
      out.reason = "out-of-kernel form positive on its u-set";
    }
  } else if (ep.value < -margin) {
    out.verdict = Verdict::NotTiltStable;
    out.reason = "out-of-kernel necessary condition violated";
  } else {
    out.verdict = Verdict::Inconclusive;
    out.reason = "out-of-kernel minimum inside the margin band";
  }
  return out;
}

SimplifiedResult simplified_check(const ProblemInstance& inst, std::optional<double> kappa,
                                  const AnalyzerOptions& opt) {
  SimplifiedResult out;
  const MultiplierSlice S = multiplier_slice(inst);
  const ProbeResult probe = out_of_kernel_probe(inst);
  const Mat& J = inst.J();
  Mat B;
  bool half = true;
  if (!probe.out_of_kernel) {
    B = kernel_basis(inst);
  } else {
    half = false;
    B = inst.grad_f().norm() <= inst.tol.tol_zero ? Mat(Mat::Identity(inst.n, inst.n))
                                                   : null_space(inst.grad_f().transpose(), inst.tol.tol_rank);
  }
  const int d = static_cast<int>(B.cols());
  if (d == 0) return out;

  auto in_K = [&](const Vec& v) {
    const Vec q = J * v;
    return q.tail(inst.m).norm() - q(0) <= 1e-9 * std::max(1.0, J.norm());
  };
  // Minimum over the argmax face at v; +inf when v is not critical or the face is empty.
  auto value_at = [&](const Vec& y, bool record) {
    const Vec v = B * y.normalized();
    if (probe.out_of_kernel && !in_K(v)) return kInf;
    const Vec dd = second_order_action(inst.gb, v, v);
    const ConeLPResult r = maximize_linear(S, dd);
    if (r.status != LPStatus::Optimal) return kInf;
    std::vector<Vec> lams{r.argmax};
    if (r.face) {
      // Sample extreme points of the face within a ball.
      Mat Ja(J.rows(), J.cols() + 1);
      Ja.leftCols(J.cols()) = J;
      Ja.col(J.cols()) = dd;
      Vec ca(inst.n + 1);
      ca.head(inst.n) = -inst.grad_f();
      ca(inst.n) = r.value;
      const MultiplierSlice face = build_slice(Ja, ca, inst.tol.tol_rank);
      if (!face.empty && face.dim() > 0) {
        const double bound = 10.0 * (1.0 + r.argmax.norm());
        for (const auto& th : sphere_grid(face.dim(), grid_step(face.dim(), 0.5))) {
          ConeSolverOptions o;
          const ConeLPResult ex = maximize_linear(face, face.basis * th, bound, o);
          if (ex.status == LPStatus::Optimal) lams.push_back(ex.argmax);
        }
      }
    }
    double best = kInf;
    for (const auto& lam : lams) {
      const EigenPair ep = min_eig_on_subspace(lagrangian_hessian(inst, lam), u_subspace(inst, lam));
      if (record) ++out.multipliers;
      if (ep.value < best) {
        best = ep.value;
        if (record && ep.value < out.min_value) {
          out.min_value = ep.value;
          out.u = ep.vector;
          out.lambda = lam;
          out.v = v;
        }
      }
    }
    return best;
  };

  std::vector<Scored> all;
  const double step = grid_step(d, opt.grid_h);
  for (const auto& y : sphere_grid(d, step, half)) all.push_back({value_at(y, true), y});
  if (probe.out_of_kernel) {
    const Vec y = B.transpose() * probe.u_bar;
    all.push_back({value_at(y, true), y});
  }
  if (d >= 2) {
    for (const auto& seed : spread_seeds(all, opt.budget, 2.0 * step, half)) {
      auto res = sphere_minimize([&](const Vec& y) { return value_at(y, false); }, seed, 0.5 * step, 1500);
      value_at(res.x, true);
    }
  }
  const double threshold = std::max(inst.tol.margin_strict, kappa ? 1.0 / *kappa : 0.0);
  out.passes = !(out.min_value <= threshold);
  return out;
}

ChiResult chi1(const ProblemInstance& inst, const AnalyzerOptions& opt) {
  ChiResult out;
  const Mat P = kernel_basis(inst);
  const int d = static_cast<int>(P.cols());
  if (d == 0) return out;
  const MultiplierSlice S = multiplier_slice(inst);
  ConeSolverOptions vo;
  vo.value_only = true;
  auto f = [&](const Vec& y) {
    const Vec u = P * y.normalized();
    const ConeLPResult r = maximize_linear(S, second_order_action(inst.gb, u, u), std::nullopt, vo);
    if (r.status == LPStatus::Unbounded) {
      out.unbounded_multipliers = true;
      return kInf;
    }
    if (r.status != LPStatus::Optimal) return kInf;
    ++out.candidates;
    return u.dot(inst.fb.hessian * u) + r.value;
  };
  const Scored best = sphere_search(d, opt.grid_h, true, opt.budget, f);
  if (!std::isfinite(best.value)) return out;
  const Vec u = P * best.y.normalized();
  const ConeLPResult r = maximize_linear(S, second_order_action(inst.gb, u, u));
  out.value = u.dot(inst.fb.hessian * u) + r.value;
  out.cert = {true, u, r.argmax, Vec(), Vec()};
  return out;
}

std::vector<QuadrupleZ> z_search(const ProblemInstance& inst, const AnalyzerOptions& opt) {
  ZRun run = ZSearcher(inst, opt).run();
  std::vector<QuadrupleZ> out;
  out.reserve(run.cands.size());
  for (auto& c : run.cands) out.push_back(std::move(c.quad));
  return out;
}

Chi23 chi2_chi3(const ProblemInstance& inst, const AnalyzerOptions& opt) {
  return ZSearcher(inst, opt).run().res;
}

AnalysisVerdict in_kernel_verdict(const ProblemInstance& inst, const AnalyzerOptions& opt) {
  AnalysisVerdict out;
  out.case_tag = CaseTag::InKernel;
  out.heuristic = inst.n > 4 || inst.m + 1 > 4;
  const double margin = inst.tol.margin_strict;
  out.chi1 = chi1(inst, opt);
  const Chi23 z = chi2_chi3(inst, opt);
  out.chi2 = z.chi2;
  out.chi3 = z.chi3;
  out.two_regularity = z.two_regularity;
  out.two_regular_checked = z.two_regular_checked;
  out.quadruples = z.quadruples;
  out.diagnostics["chi1"] = out.chi1.value;
  out.diagnostics["chi2"] = out.chi2.value;
  out.diagnostics["chi3"] = out.chi3.value;

  const double chi23 = std::min(out.chi2.value, out.chi3.value);
  const double mn = std::min(out.chi1.value, chi23);
  if (out.chi1.value < -margin) {
    out.verdict = Verdict::NotTiltStable;
    out.witness = out.chi1.cert;
    out.reason = "chi1 negative: condition (a) of the in-kernel necessary condition fails";
  } else if (chi23 < -margin) {
    const ChiResult& c = out.chi2.value <= out.chi3.value ? out.chi2 : out.chi3;
    out.witness = c.cert;
    if (out.two_regularity == TwoRegularity::Fails) {
      out.verdict = Verdict::Inconclusive;
      out.reason = "negative chi2/chi3 but 2-regularity fails on a q = 0 direction";
    } else {
      out.verdict = Verdict::NotTiltStable;
      out.reason = out.two_regularity == TwoRegularity::Ok
                       ? "negative chi2/chi3; 2-regularity verified on the sampled q = 0 directions"
                       : "negative chi2/chi3; no q = 0 quadruple, 2-regularity hypothesis vacuous";
    }
  } else if (out.chi1.unbounded_multipliers) {
    out.verdict = Verdict::Inconclusive;
    out.reason = "a critical direction has an empty directional multiplier set";
  } else if (mn > margin) {
    out.verdict = Verdict::TiltStable;
    if (std::isinf(mn)) {
      out.bound_estimate = 0.0;
      out.infimum_not_attained = true;
      out.reason = "all strata empty: every modulus works";
    } else {
      out.bound_estimate = 1.0 / mn;
      out.reason = "chi1, chi2, chi3 all positive";
    }
  } else {
    out.verdict = Verdict::Inconclusive;
    out.reason = "smallest chi inside the margin band";
  }
  return out;
}

AnalysisVerdict analyze(const ProblemInstance& inst, const AnalyzerOptions& opt) {
  const CaseResult cr = classify_case(inst);
  AnalysisVerdict out = cr.tag == CaseTag::OutOfKernel ? out_kernel_check(inst, cr.probe)
                                                       : in_kernel_verdict(inst, opt);
  out.u_bar = cr.probe.u_bar;
  out.diagnostics["probe_value"] = cr.probe.value;
  out.simplified = simplified_check(inst, std::nullopt, opt);
  return out;
}

}  // namespace tiltsocp
