#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace tiltsocp {

/// Numerical rank with singular values cut at tol_rel * sigma_max.
int numerical_rank(const Eigen::MatrixXd& A, double tol_rel);

/// Orthonormal basis of ker A (columns). Cutoff relative to sigma_max.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, double tol_rel);

/// Orthonormal basis of range A (columns).
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& A, double tol_rel);

/// Moore-Penrose pseudoinverse with relative cutoff.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A, double tol_rel);

/// Smallest eigenpair of P^T F P for symmetric F and orthonormal P.
/// Value is +infinity and vector empty when P has no columns.
struct EigenPair {
  double value;
  Eigen::VectorXd vector;
};
EigenPair min_eig_on_subspace(const Eigen::MatrixXd& F, const Eigen::MatrixXd& P);

/**
 * Deterministic covering of the unit sphere S^{dim-1} by nested angle
 * grids with arc spacing about h. dim == 1 gives {-1, +1}.
 * With half == true only one of each pair {x, -x} is kept.
 */
std::vector<Eigen::VectorXd> sphere_grid(int dim, double h, bool half = false);

struct MinimizeResult {
  Eigen::VectorXd x;
  double value;
  int evaluations;
};

/// Derivative-free Nelder-Mead on R^d.
MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double step,
                           int max_evals = 2000, double ftol = 1e-14);

/**
 * Local minimization of f over the unit sphere started at unit x0. Works
 * in tangent coordinates at x0 with a normalizing retraction.
 */
MinimizeResult sphere_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                               const Eigen::VectorXd& x0, double step,
                               int max_evals = 2000);

/// Seeded generator with the few draws the library needs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }
  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v;
    do {
      v = normal_vector(n);
    } while (v.norm() < 1e-12);
    return v.normalized();
  }
  /// Uniform in the ball of radius r.
  Eigen::VectorXd ball(int n, double r) {
    return unit_vector(n) * (r * std::pow(uniform(), 1.0 / n));
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tiltsocp
