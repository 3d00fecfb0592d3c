#pragma once

#include <vector>

#include <Eigen/Core>

namespace tiltsocp {

/// One term c * prod_i x_i^{e_i}.
struct Monomial {
  double c = 0.0;
  std::vector<int> e;
};

/**
 * Multivariate polynomial on R^n with exact first and second derivatives.
 *
 * Terms are kept in canonical form: sorted by exponent vector, duplicates
 * merged, zero coefficients dropped.
 */
class PolyFunc {
 public:
  static constexpr int kDefaultMaxDegree = 6;

  PolyFunc() = default;
  explicit PolyFunc(int n) : n_(n) {}

  /// Validates and canonicalizes. Throws std::invalid_argument on bad terms.
  PolyFunc(int n, std::vector<Monomial> terms,
           int max_degree = kDefaultMaxDegree);

  int n() const { return n_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const;

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  /// Built symmetric: entry (j,k) and (k,j) are the same double.
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  PolyFunc& operator+=(const PolyFunc& other);
  PolyFunc operator*(double s) const;

  /// Constant, linear and quadratic helpers used by tests and tools.
  static PolyFunc constant(int n, double c);
  static PolyFunc linear(const Eigen::VectorXd& a, double b = 0.0);
  /// 0.5 x^T Q x + a^T x + b with Q symmetric.
  static PolyFunc quadratic(const Eigen::MatrixXd& Q, const Eigen::VectorXd& a,
                            double b = 0.0);

  friend bool operator==(const PolyFunc& a, const PolyFunc& b);

 private:
  void canonicalize();

  int n_ = 0;
  std::vector<Monomial> terms_;
};

}  // namespace tiltsocp
