#ifndef JETRED_MINKOWSKI_JETS_HPP
#define JETRED_MINKOWSKI_JETS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jetred/errors.hpp"

namespace jetred {

template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

/// Numeric value of a scalar, stripping derivative parts of AD types.
template <class S>
double value_of(const S& x) {
  if constexpr (std::is_arithmetic_v<S>) {
    return static_cast<double>(x);
  } else {
    return value_of(x.value());
  }
}

/// eta = diag(-1, 1, ..., 1) on R^n.
class Metric {
 public:
  explicit Metric(int n) : n_(n) {
    if (n < 2) throw ShapeError("Metric: dimension must be >= 2");
  }

  int dimension() const { return n_; }
  double sign(int i) const { return i == 0 ? -1.0 : 1.0; }
  Eigen::MatrixXd matrix() const {
    Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(n_, n_);
    eta(0, 0) = -1.0;
    return eta;
  }

  template <class Derived>
  VectorX<typename Derived::Scalar> raise(const Eigen::MatrixBase<Derived>& u) const {
    check(u.size());
    VectorX<typename Derived::Scalar> r = u;
    r(0) = -r(0);
    return r;
  }

  template <class Derived>
  VectorX<typename Derived::Scalar> lower(const Eigen::MatrixBase<Derived>& v) const {
    return raise(v);
  }

  /// eta(u, v) = -u0 v0 + sum_i ui vi.
  template <class D1, class D2>
  typename D1::Scalar inner(const Eigen::MatrixBase<D1>& u, const Eigen::MatrixBase<D2>& v) const {
    check(u.size());
    check(v.size());
    typename D1::Scalar s = -u(0) * v(0);
    for (int i = 1; i < n_; ++i) s += u(i) * v(i);
    return s;
  }

  void check(Eigen::Index size) const {
    if (size != n_) throw ShapeError("Metric: dimension mismatch");
  }

 private:
  int n_;
};

/// 2-jet (u_a, u_ab) of a scalar function at a point, covariant components.
template <class S = double>
class ScalarJet2 {
 public:
  ScalarJet2(VectorX<S> u, MatrixX<S> u2) : u_(std::move(u)), u2_(std::move(u2)) {
    if (u_.size() < 2 || u2_.rows() != u_.size() || u2_.cols() != u_.size())
      throw ShapeError("ScalarJet2: shape mismatch");
    double scale = 1.0, asym = 0.0;
    for (Eigen::Index i = 0; i < u2_.rows(); ++i) {
      if (!std::isfinite(value_of(u_(i)))) throw DomainError("ScalarJet2: non-finite entry");
      for (Eigen::Index j = 0; j < u2_.cols(); ++j) {
        const double x = value_of(u2_(i, j));
        if (!std::isfinite(x)) throw DomainError("ScalarJet2: non-finite entry");
        scale = std::max(scale, std::abs(x));
        asym = std::max(asym, std::abs(x - value_of(u2_(j, i))));
      }
    }
    if (asym > 1e-14 * scale) throw DomainError("ScalarJet2: second-order part is not symmetric");
    u2_ = (0.5 * (u2_ + u2_.transpose())).eval();
  }

  int dimension() const { return static_cast<int>(u_.size()); }
  const VectorX<S>& u() const { return u_; }
  const MatrixX<S>& u2() const { return u2_; }

 private:
  VectorX<S> u_;
  MatrixX<S> u2_;
};

/// Order-2 Taylor data of a point map at a base point: value, first
/// derivatives A(mu, nu) = d y^mu / d x^nu and second derivatives
/// A2[mu](nu1, nu2).
template <class S = double>
struct Map2Jet {
  VectorX<S> value;
  MatrixX<S> A;
  std::vector<MatrixX<S>> A2;

  static Map2Jet identity(const VectorX<S>& at) {
    const auto n = at.size();
    return {at, MatrixX<S>::Identity(n, n), std::vector<MatrixX<S>>(n, MatrixX<S>::Zero(n, n))};
  }

  int dimension() const { return static_cast<int>(value.size()); }

  void validate() const {
    const auto n = value.size();
    if (A.rows() != n || A.cols() != n || static_cast<Eigen::Index>(A2.size()) != n)
      throw ShapeError("Map2Jet: shape mismatch");
    for (const auto& h : A2)
      if (h.rows() != n || h.cols() != n) throw ShapeError("Map2Jet: shape mismatch");
    if (value_of(A.determinant()) == 0.0) throw DomainError("Map2Jet: singular first derivative");
  }
};

/// ||L^T eta L - eta||_max <= tol.
inline bool is_lorentz(const Eigen::MatrixXd& L, double tol = 1e-10) {
  if (L.rows() != L.cols() || L.rows() < 2) return false;
  const Eigen::MatrixXd eta = Metric(static_cast<int>(L.rows())).matrix();
  return (L.transpose() * eta * L - eta).cwiseAbs().maxCoeff() <= tol;
}

namespace detail {

template <class S>
MatrixX<S> symmetrize(const MatrixX<S>& m) {
  return (S(0.5) * (m + m.transpose())).eval();
}

template <class S>
void require_dimension(const ScalarJet2<S>& j, Eigen::Index n, const char* what) {
  if (j.dimension() != n) throw ShapeError(std::string(what) + ": dimension mismatch");
}

// Pull back by a linear map without checking the Lorentz condition.
template <class S, class M>
ScalarJet2<S> pull_linear(const ScalarJet2<S>& j, const M& L) {
  MatrixX<S> Ls = L.template cast<S>();
  return ScalarJet2<S>(Ls.transpose() * j.u(), symmetrize<S>(Ls.transpose() * j.u2() * Ls));
}

}  // namespace detail

/// (u_mu, u_mu1mu2) -> (A^nu_mu u_nu, A^nu1_mu1 A^nu2_mu2 u_nu1nu2 + A^nu_mu1mu2 u_nu):
/// the 2-jet of f o phi when j is the 2-jet of f at phi's image point.
template <class S>
ScalarJet2<S> diffeo_action(const ScalarJet2<S>& j, const Map2Jet<S>& phi) {
  phi.validate();
  detail::require_dimension(j, phi.dimension(), "diffeo_action");
  MatrixX<S> u2 = phi.A.transpose() * j.u2() * phi.A;
  for (int nu = 0; nu < j.dimension(); ++nu) u2 += j.u()(nu) * phi.A2[nu];
  return ScalarJet2<S>(phi.A.transpose() * j.u(), detail::symmetrize<S>(u2));
}

/// (u, u2) -> (lambda u, lambda^2 u2), lambda > 0.
template <class S>
ScalarJet2<S> dilatation_action(const ScalarJet2<S>& j, const S& lambda) {
  if (!(value_of(lambda) > 0.0)) throw DomainError("dilatation_action: lambda must be positive");
  return ScalarJet2<S>(j.u() * lambda, j.u2() * (lambda * lambda));
}

/// (u, u2) -> (L^T u, L^T u2 L) for L^T eta L = eta.
template <class S>
ScalarJet2<S> lorentz_action(const ScalarJet2<S>& j, const Eigen::MatrixXd& L) {
  detail::require_dimension(j, L.rows(), "lorentz_action");
  if (!is_lorentz(L)) throw DomainError("lorentz_action: matrix does not preserve eta");
  return detail::pull_linear(j, L);
}

/// Special conformal transformation with parameter b (upper index) acting
/// on jets at its fixed point 0:
/// u2 -> u2 - 2 u b_low^T - 2 b_low u^T + 2 (u . b) eta.
template <class S, class Derived>
ScalarJet2<S> sct_action(const ScalarJet2<S>& j, const Eigen::MatrixBase<Derived>& b) {
  const Metric eta(j.dimension());
  detail::require_dimension(j, b.size(), "sct_action");
  const VectorX<S> b_up = b.template cast<S>();
  const VectorX<S> b_low = eta.lower(b_up);
  S ub = j.u()(0) * b_up(0);
  for (int i = 1; i < j.dimension(); ++i) ub += j.u()(i) * b_up(i);
  MatrixX<S> u2 = j.u2() - S(2) * (j.u() * b_low.transpose() + b_low * j.u().transpose());
  for (int i = 0; i < j.dimension(); ++i) u2(i, i) += S(2) * ub * S(eta.sign(i));
  return ScalarJet2<S>(j.u(), detail::symmetrize<S>(u2));
}

/// 2-jet of outer o inner, where outer is taken at inner.value.
template <class S>
Map2Jet<S> compose_jets(const Map2Jet<S>& outer, const Map2Jet<S>& inner) {
  const auto n = inner.value.size();
  if (outer.value.size() != n) throw ShapeError("compose_jets: dimension mismatch");
  Map2Jet<S> r;
  r.value = outer.value;
  r.A = outer.A * inner.A;
  r.A2.assign(n, MatrixX<S>::Zero(n, n));
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    MatrixX<S> h = inner.A.transpose() * outer.A2[mu] * inner.A;
    for (Eigen::Index k = 0; k < n; ++k) h += outer.A(mu, k) * inner.A2[k];
    r.A2[mu] = detail::symmetrize<S>(h);
  }
  return r;
}

}  // namespace jetred

#endif  // JETRED_MINKOWSKI_JETS_HPP
