#include "tiltsocp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace tiltsocp {

namespace {

Eigen::JacobiSVD<Eigen::MatrixXd> full_svd(const Eigen::MatrixXd& A) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int rank_from(const Eigen::VectorXd& s, double tol_rel) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = tol_rel * s(0);
  int r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& A, double tol_rel) {
  if (A.size() == 0) return 0;
  return rank_from(Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues(), tol_rel);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, double tol_rel) {
  const int n = static_cast<int>(A.cols());
  if (A.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  auto svd = full_svd(A);
  const int r = rank_from(svd.singularValues(), tol_rel);
  return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd range_basis(const Eigen::MatrixXd& A, double tol_rel) {
  if (A.cols() == 0) return Eigen::MatrixXd(A.rows(), 0);
  auto svd = full_svd(A);
  const int r = rank_from(svd.singularValues(), tol_rel);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A, double tol_rel) {
  if (A.size() == 0) return Eigen::MatrixXd::Zero(A.cols(), A.rows());
  auto svd = full_svd(A);
  const Eigen::VectorXd& s = svd.singularValues();
  const int r = rank_from(s, tol_rel);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(A.cols(), A.rows());
  for (int i = 0; i < r; ++i) {
    out += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).transpose();
  }
  return out;
}

EigenPair min_eig_on_subspace(const Eigen::MatrixXd& F, const Eigen::MatrixXd& P) {
  if (P.cols() == 0) {
    return {std::numeric_limits<double>::infinity(), Eigen::VectorXd()};
  }
  Eigen::MatrixXd R = P.transpose() * F * P;
  R = 0.5 * (R + R.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
  return {es.eigenvalues()(0), P * es.eigenvectors().col(0)};
}

std::vector<Eigen::VectorXd> sphere_grid(int dim, double h, bool half) {
  std::vector<Eigen::VectorXd> out;
  if (dim <= 0) return out;
  if (dim == 1) {
    out.push_back(Eigen::VectorXd::Constant(1, 1.0));
    if (!half) out.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return out;
  }
  const double pi = std::numbers::pi;
  if (dim == 2) {
    const double span = half ? pi : 2.0 * pi;
    const int count = std::max(4, static_cast<int>(std::ceil(span / h)));
    for (int k = 0; k < count; ++k) {
      // Half circle: angles in (-pi/2, pi/2], first coordinate >= 0.
      const double t = half ? -0.5 * pi + span * (k + 1) / count : span * k / count;
      Eigen::VectorXd x(2);
      x << std::cos(t), std::sin(t);
      out.push_back(x);
    }
    return out;
  }
  const int rings = std::max(3, static_cast<int>(std::ceil(pi / h)) + 1);
  for (int j = 0; j < rings; ++j) {
    const double phi = pi * j / (rings - 1);
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    if (half && c < -1e-12) break;
    if (s < 1e-12) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
      x(0) = c > 0 ? 1.0 : -1.0;
      out.push_back(x);
      continue;
    }
    // On the equator the half-sphere condition moves to the sub-sphere.
    const bool sub_half = half && std::abs(c) <= 1e-12;
    for (const auto& y : sphere_grid(dim - 1, h / s, sub_half)) {
      Eigen::VectorXd x(dim);
      x(0) = c;
      x.tail(dim - 1) = s * y;
      out.push_back(x);
    }
  }
  return out;
}

MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double step, int max_evals,
                           double ftol) {
  const int d = static_cast<int>(x0.size());
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  if (d == 0) return {x0, eval(x0), evals};

  std::vector<Eigen::VectorXd> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  for (int i = 0; i < d; ++i) pts[i + 1](i) += step;
  for (int i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

  std::vector<int> order(d + 1);
  while (evals < max_evals) {
    for (int i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second = order[d - 1];
    double size = 0.0;
    for (int i = 0; i <= d; ++i) size = std::max(size, (pts[i] - pts[best]).norm());
    if (std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best])) &&
        size < 1e-10) {
      break;
    }
    if (size < 1e-14) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i <= d; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= d;
    const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Eigen::VectorXd xc =
        outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (int i = 0; i <= d; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= d; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  return {pts[best], vals[best], evals};
}

MinimizeResult sphere_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                               const Eigen::VectorXd& x0, double step, int max_evals) {
  const int dim = static_cast<int>(x0.size());
  if (dim <= 1) return {x0, f(x0), 1};
  // Tangent basis at x0: orthonormal complement of x0.
  const Eigen::MatrixXd T = null_space(x0.transpose(), 1e-12);
  auto lift = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return (x0 + T * y).normalized();
  };
  auto res = nelder_mead([&](const Eigen::VectorXd& y) { return f(lift(y)); },
                         Eigen::VectorXd::Zero(dim - 1), step, max_evals);
  return {lift(res.x), res.value, res.evaluations};
}

}  // namespace tiltsocp
