#ifndef JETRED_MULTIPOLY2_HPP
#define JETRED_MULTIPOLY2_HPP

#include <Eigen/Dense>

#include "jetred/errors.hpp"

namespace jetred {

/// Degree-2 truncated polynomial in n variables h around a base point:
/// value + grad . h + 1/2 h^T hess h. Doubles as a second-order forward-mode
/// scalar.
class MultiPoly2 {
 public:
  MultiPoly2() = default;
  MultiPoly2(int n, double c) : value_(c), grad_(Eigen::VectorXd::Zero(n)), hess_(Eigen::MatrixXd::Zero(n, n)) {}
  MultiPoly2(double c, Eigen::VectorXd g, Eigen::MatrixXd h) : value_(c), grad_(std::move(g)), hess_(std::move(h)) {}

  /// The coordinate x_i seeded at `at`.
  static MultiPoly2 variable(int n, int i, double at) {
    MultiPoly2 p(n, at);
    p.grad_(i) = 1.0;
    return p;
  }

  int size() const { return static_cast<int>(grad_.size()); }
  double value() const { return value_; }
  const Eigen::VectorXd& grad() const { return grad_; }
  const Eigen::MatrixXd& hess() const { return hess_; }

  MultiPoly2 operator-() const { return {-value_, -grad_, -hess_}; }

  MultiPoly2& operator+=(const MultiPoly2& o) {
    check(o);
    value_ += o.value_;
    grad_ += o.grad_;
    hess_ += o.hess_;
    return *this;
  }
  MultiPoly2& operator-=(const MultiPoly2& o) { return *this += -o; }
  MultiPoly2& operator*=(const MultiPoly2& o) {
    check(o);
    hess_ = value_ * o.hess_ + o.value_ * hess_ + grad_ * o.grad_.transpose() + o.grad_ * grad_.transpose();
    grad_ = value_ * o.grad_ + o.value_ * grad_;
    value_ *= o.value_;
    return *this;
  }
  MultiPoly2& operator/=(const MultiPoly2& o) { return *this *= o.reciprocal(); }

  MultiPoly2& operator+=(double c) {
    value_ += c;
    return *this;
  }
  MultiPoly2& operator*=(double c) {
    value_ *= c;
    grad_ *= c;
    hess_ *= c;
    return *this;
  }

  /// 1/p: value 1/p0, grad -g/p0^2, hess -H/p0^2 + 2 g g^T/p0^3.
  MultiPoly2 reciprocal() const {
    if (value_ == 0.0) throw DomainError("MultiPoly2: reciprocal of a polynomial vanishing at the base point");
    const double r = 1.0 / value_;
    return {r, -r * r * grad_, -r * r * hess_ + 2.0 * r * r * r * grad_ * grad_.transpose()};
  }

  friend MultiPoly2 operator+(MultiPoly2 a, const MultiPoly2& b) { return a += b; }
  friend MultiPoly2 operator-(MultiPoly2 a, const MultiPoly2& b) { return a -= b; }
  friend MultiPoly2 operator*(MultiPoly2 a, const MultiPoly2& b) { return a *= b; }
  friend MultiPoly2 operator/(MultiPoly2 a, const MultiPoly2& b) { return a /= b; }
  friend MultiPoly2 operator+(MultiPoly2 a, double c) { return a += c; }
  friend MultiPoly2 operator+(double c, MultiPoly2 a) { return a += c; }
  friend MultiPoly2 operator-(MultiPoly2 a, double c) { return a += -c; }
  friend MultiPoly2 operator-(double c, const MultiPoly2& a) { return -a + c; }
  friend MultiPoly2 operator*(MultiPoly2 a, double c) { return a *= c; }
  friend MultiPoly2 operator*(double c, MultiPoly2 a) { return a *= c; }
  friend MultiPoly2 operator/(MultiPoly2 a, double c) { return a *= 1.0 / c; }
  friend MultiPoly2 operator/(double c, const MultiPoly2& a) { return a.reciprocal() *= c; }

 private:
  void check(const MultiPoly2& o) const {
    if (o.grad_.size() != grad_.size()) throw ShapeError("MultiPoly2: variable count mismatch");
  }

  double value_ = 0.0;
  Eigen::VectorXd grad_;
  Eigen::MatrixXd hess_;
};

inline MultiPoly2 zero_like(const MultiPoly2& p) { return MultiPoly2(p.size(), 0.0); }

}  // namespace jetred

#endif  // JETRED_MULTIPOLY2_HPP
