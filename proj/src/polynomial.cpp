#include "tiltsocp/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tiltsocp {

namespace {

// x^k with x^0 = 1 (also for x = 0) and x^k = 0 for k < 0.
double ipow(double x, int k) {
  if (k < 0) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Product of x_i^{e_i} over i, skipping index `skip1` and `skip2`.
double partial_product(const Eigen::VectorXd& x, const std::vector<int>& e,
                       int skip1 = -1, int skip2 = -1) {
  double r = 1.0;
  for (int i = 0; i < static_cast<int>(e.size()); ++i) {
    if (i == skip1 || i == skip2) continue;
    if (e[i] != 0) r *= ipow(x(i), e[i]);
  }
  return r;
}

}  // namespace

PolyFunc::PolyFunc(int n, std::vector<Monomial> terms, int max_degree)
    : n_(n), terms_(std::move(terms)) {
  if (n_ < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.e.size()) != n_) {
      throw std::invalid_argument("exponent vector length " +
                                  std::to_string(t.e.size()) + " != n = " +
                                  std::to_string(n_));
    }
    if (!std::isfinite(t.c)) {
      throw std::invalid_argument("non-finite coefficient");
    }
    int deg = 0;
    for (int k : t.e) {
      if (k < 0) throw std::invalid_argument("negative exponent");
      deg += k;
    }
    if (deg > max_degree) {
      throw std::invalid_argument("term degree " + std::to_string(deg) +
                                  " exceeds maximum " +
                                  std::to_string(max_degree));
    }
  }
  canonicalize();
}

void PolyFunc::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Monomial& a, const Monomial& b) { return a.e < b.e; });
  std::vector<Monomial> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().e == t.e) {
      merged.back().c += t.c;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Monomial& t) { return t.c == 0.0; });
  terms_ = std::move(merged);
}

int PolyFunc::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    d = std::max(d, std::accumulate(t.e.begin(), t.e.end(), 0));
  }
  return d;
}

double PolyFunc::value(const Eigen::VectorXd& x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.c * partial_product(x, t.e);
  return v;
}

Eigen::VectorXd PolyFunc::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n_);
  for (const auto& t : terms_) {
    for (int j = 0; j < n_; ++j) {
      if (t.e[j] == 0) continue;
      g(j) += t.c * t.e[j] * ipow(x(j), t.e[j] - 1) *
              partial_product(x, t.e, j);
    }
  }
  return g;
}

Eigen::MatrixXd PolyFunc::hessian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& t : terms_) {
    for (int j = 0; j < n_; ++j) {
      if (t.e[j] == 0) continue;
      if (t.e[j] >= 2) {
        H(j, j) += t.c * t.e[j] * (t.e[j] - 1) * ipow(x(j), t.e[j] - 2) *
                   partial_product(x, t.e, j);
      }
      for (int k = j + 1; k < n_; ++k) {
        if (t.e[k] == 0) continue;
        const double h = t.c * t.e[j] * t.e[k] * ipow(x(j), t.e[j] - 1) *
                         ipow(x(k), t.e[k] - 1) *
                         partial_product(x, t.e, j, k);
        H(j, k) += h;
        H(k, j) += h;
      }
    }
  }
  return H;
}

PolyFunc& PolyFunc::operator+=(const PolyFunc& other) {
  if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

PolyFunc PolyFunc::operator*(double s) const {
  PolyFunc out = *this;
  for (auto& t : out.terms_) t.c *= s;
  out.canonicalize();
  return out;
}

PolyFunc PolyFunc::constant(int n, double c) {
  return PolyFunc(n, {Monomial{c, std::vector<int>(n, 0)}});
}

PolyFunc PolyFunc::linear(const Eigen::VectorXd& a, double b) {
  const int n = static_cast<int>(a.size());
  std::vector<Monomial> terms{{b, std::vector<int>(n, 0)}};
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    terms.push_back({a(i), e});
  }
  return PolyFunc(n, std::move(terms));
}

PolyFunc PolyFunc::quadratic(const Eigen::MatrixXd& Q, const Eigen::VectorXd& a,
                             double b) {
  const int n = static_cast<int>(a.size());
  PolyFunc p = linear(a, b);
  std::vector<Monomial> terms;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 2;
    terms.push_back({0.5 * Q(i, i), e});
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> f(n, 0);
      f[i] = 1;
      f[j] = 1;
      terms.push_back({0.5 * (Q(i, j) + Q(j, i)), f});
    }
  }
  p += PolyFunc(n, std::move(terms));
  return p;
}

bool operator==(const PolyFunc& a, const PolyFunc& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].c != b.terms_[i].c || a.terms_[i].e != b.terms_[i].e) {
      return false;
    }
  }
  return true;
}

}  // namespace tiltsocp
