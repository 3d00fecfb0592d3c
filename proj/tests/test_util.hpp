#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tiltsocp/problem.hpp"

namespace testutil {

inline std::string instance_path(const std::string& name) {
  return std::string(TILTSOCP_INSTANCE_DIR) + "/" + name;
}

inline tiltsocp::ProblemInstance load(const std::string& name) {
  return tiltsocp::load_instance(instance_path(name));
}

/// g = identity on R^n, f = 0.5 x^T S x + c^T x.
inline tiltsocp::ProblemInstance identity_instance(const Eigen::MatrixXd& S, const Eigen::VectorXd& c,
                                                   double sigma = 1.0) {
  using tiltsocp::PolyFunc;
  const int n = static_cast<int>(c.size());
  std::vector<PolyFunc> g;
  for (int i = 0; i < n; ++i) g.push_back(PolyFunc::linear(Eigen::VectorXd::Unit(n, i)));
  return tiltsocp::make_instance(PolyFunc::quadratic(S, c), g, Eigen::VectorXd::Zero(n), sigma);
}

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline Eigen::VectorXd gaussian(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = N(rng);
  return v;
}

inline Eigen::MatrixXd gaussian(std::mt19937_64& rng, int r, int c, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  Eigen::MatrixXd M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = N(rng);
  return M;
}

inline Eigen::MatrixXd sym(std::mt19937_64& rng, int n, double scale = 1.0) {
  Eigen::MatrixXd A = gaussian(rng, n, n, scale);
  return 0.5 * (A + A.transpose());
}

/// A random point of Q* = {l0 + |l_r| <= 0}; interior unless on_boundary.
inline Eigen::VectorXd random_dual(std::mt19937_64& rng, int p, bool on_boundary = false) {
  Eigen::VectorXd l = gaussian(rng, p);
  const double r = l.tail(p - 1).norm();
  std::uniform_real_distribution<double> U(0.0, 1.0);
  l(0) = on_boundary ? -r : -r - U(rng);
  return l;
}

}  // namespace testutil
