#ifndef JETRED_MINKOWSKI_REDUCTION_HPP
#define JETRED_MINKOWSKI_REDUCTION_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "jetred/errors.hpp"
#include "jetred/minkowski_jets.hpp"

namespace jetred {

/// Rescales a timelike jet so that its gradient has eta(u, u) = -1:
/// (u, u2) -> (u / sqrt(-u^2), u2 / (-u^2)).
template <class S>
ScalarJet2<S> normalize_dilatation(const ScalarJet2<S>& j) {
  using std::sqrt;
  const Metric eta(j.dimension());
  const S u_sq = eta.inner(j.u(), j.u());
  if (!(value_of(u_sq) < 0.0)) throw NonTimelikeGradient("gradient is not timelike");
  const S lambda = S(1) / sqrt(-u_sq);
  return dilatation_action(j, lambda);
}

/// Lorentz matrix A with A v = e0 for a unit timelike covector v:
///   A = [[v0, -v^T], [v, I - v v^T (1 + v0) / |v|^2]]   (v = spatial part).
/// For v = (+-1, 0, ..., 0) returns diag(+-1, 1, ..., 1).
template <class Derived>
MatrixX<typename Derived::Scalar> boost_to_e0(const Eigen::MatrixBase<Derived>& v_in) {
  using S = typename Derived::Scalar;
  using std::sqrt;
  const int n = static_cast<int>(v_in.size());
  const Metric eta(n);
  const S norm = eta.inner(v_in, v_in);
  if (std::abs(value_of(norm) + 1.0) > 1e-8) throw DomainError("boost_to_e0: covector is not unit timelike");
  const VectorX<S> v = v_in / sqrt(-norm);

  MatrixX<S> A = MatrixX<S>::Identity(n, n);
  const VectorX<S> vs = v.tail(n - 1);
  const S vs_sq = vs.squaredNorm();
  if (value_of(vs_sq) == 0.0) {
    if (value_of(v(0)) < 0.0) A(0, 0) = S(-1);
    return A;
  }
  A(0, 0) = v(0);
  A.block(0, 1, 1, n - 1) = -vs.transpose();
  A.block(1, 0, n - 1, 1) = vs;
  A.block(1, 1, n - 1, n - 1) -= vs * vs.transpose() * ((S(1) + v(0)) / vs_sq);
  return A;
}

namespace detail {

// Special conformal shift with b_low = w_{0 beta}/2; requires u == e0.
template <class S>
ScalarJet2<S> sct_cancel_unchecked(const ScalarJet2<S>& j) {
  const Metric eta(j.dimension());
  const VectorX<S> b_low = j.u2().row(0).transpose() * S(0.5);
  return sct_action(j, eta.raise(b_low));
}

}  // namespace detail

/// Kills the time row and column of a jet with u = e0 by a special conformal
/// transformation; the spatial block becomes w_ij - w_00 delta_ij.
template <class S>
ScalarJet2<S> sct_cancel(const ScalarJet2<S>& j) {
  VectorX<double> e0 = VectorX<double>::Zero(j.dimension());
  e0(0) = 1.0;
  for (int i = 0; i < j.dimension(); ++i)
    if (std::abs(value_of(j.u()(i)) - e0(i)) > 1e-10) throw DomainError("sct_cancel: first-order part is not e0");
  return detail::sct_cancel_unchecked(j);
}

/// Dilatation, boost to e0 and special conformal cancellation; returns the
/// reduced (n-1)x(n-1) spatial block w~.
template <class S>
MatrixX<S> reduced_spatial_block(const ScalarJet2<S>& j) {
  const ScalarJet2<S> v = normalize_dilatation(j);
  const MatrixX<S> A = boost_to_e0(v.u());
  const ScalarJet2<S> boosted = detail::pull_linear(v, A.transpose());
  // A v = e0 up to rounding; pin the first-order part exactly.
  VectorX<S> e0 = VectorX<S>::Zero(j.dimension());
  e0(0) = S(1);
  const ScalarJet2<S> w = detail::sct_cancel_unchecked(ScalarJet2<S>(e0, boosted.u2()));
  const int m = j.dimension() - 1;
  return w.u2().block(1, 1, m, m);
}

/// S_k = Tr(w~^k), k = 1 .. rows(w~).
template <class S>
std::vector<S> traces(const MatrixX<S>& w) {
  std::vector<S> s;
  MatrixX<S> power = w;
  for (Eigen::Index k = 1; k <= w.rows(); ++k) {
    s.push_back(power.trace());
    if (k < w.rows()) power = (power * w).eval();
  }
  return s;
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations;
/// eigenvalues ascending, frame columns matching.
struct SpatialEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd frame;
};

SpatialEigen eigen_spatial(const Eigen::MatrixXd& w);

struct CanonicalJet {
  int n = 0;
  Eigen::MatrixXd w_tilde;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd frame;
};

CanonicalJet canonicalize(const ScalarJet2<double>& j);
std::vector<double> traces(const CanonicalJet& c);

/// Newton's identities: power sums S_1..S_m -> elementary symmetric sigma_1..sigma_m.
std::vector<double> elementary_from_traces(const std::vector<double>& power_sums);
std::vector<double> elementary_from_roots(const Eigen::VectorXd& roots);

/// Gradient data entering the closed-form operators.
template <class S>
struct GradientFrame {
  S grad_sq;            // eta^{ab} d_a f d_b f
  VectorX<S> grad_up;   // d^a f
  MatrixX<S> P;         // d^a f d^b f / (grad f)^2
  S lap;                // eta^{ab} d_ab f
};

template <class S>
GradientFrame<S> make_gradient_frame(const ScalarJet2<S>& j) {
  const Metric eta(j.dimension());
  GradientFrame<S> g;
  g.grad_sq = eta.inner(j.u(), j.u());
  if (value_of(g.grad_sq) == 0.0) throw DomainError("closed-form operator: (grad f)^2 vanishes");
  g.grad_up = eta.raise(j.u());
  g.P = g.grad_up * g.grad_up.transpose() / g.grad_sq;
  g.lap = -j.u2()(0, 0);
  for (int i = 1; i < j.dimension(); ++i) g.lap += j.u2()(i, i);
  return g;
}

namespace detail {

// Contractions of M = d_ab f / (grad f)^2 with eta and P, written as traces.
template <class S>
struct ClosedFormTerms {
  MatrixX<S> etaM;  // eta^{ab} M_bc
  MatrixX<S> PM;    // P^{ab} M_bc
  S tr_etaM;        // grad^2 f / (grad f)^2
  S tr_PM;          // d^a f d^b f d_ab f / (grad f)^4
};

template <class S>
ClosedFormTerms<S> closed_form_terms(const ScalarJet2<S>& j) {
  const GradientFrame<S> g = make_gradient_frame(j);
  const MatrixX<S> M = j.u2() / g.grad_sq;
  MatrixX<S> etaM = M;
  etaM.row(0) *= S(-1);
  ClosedFormTerms<S> t{etaM, g.P * M, g.lap / g.grad_sq, S(0)};
  t.tr_PM = t.PM.trace();
  return t;
}

inline void require_dim4(int n, const char* what) {
  if (n != 4) throw ShapeError(std::string(what) + ": defined for n = 4");
}

}  // namespace detail

/// D(f) = grad^2 f/(grad f)^2 + (n-2) d^a f d^b f d_ab f/(grad f)^4.
template <class S>
S Dn_closed(const ScalarJet2<S>& j) {
  const auto t = detail::closed_form_terms(j);
  return t.tr_etaM + S(j.dimension() - 2) * t.tr_PM;
}

template <class S>
S D1_closed(const ScalarJet2<S>& j) {
  detail::require_dim4(j.dimension(), "D1_closed");
  const auto t = detail::closed_form_terms(j);
  return t.tr_etaM + S(2) * t.tr_PM;
}

template <class S>
S D2_closed(const ScalarJet2<S>& j) {
  detail::require_dim4(j.dimension(), "D2_closed");
  const auto t = detail::closed_form_terms(j);
  // eta^{am} eta^{bl} M_ab M_lm            -> tr(etaM etaM)
  // -2 eta^{am} P^{bl} M_ab M_lm           -> -2 tr(etaM PM)
  // 2 P^{ab} P^{lm} M_ab M_lm              -> 2 tr(PM)^2
  // 2 (grad^2 f/(grad f)^2) P^{ab} M_ab    -> 2 tr(etaM) tr(PM)
  return (t.etaM * t.etaM).trace() - S(2) * (t.etaM * t.PM).trace() + S(2) * t.tr_PM * t.tr_PM +
         S(2) * t.tr_etaM * t.tr_PM;
}

template <class S>
S D3_closed(const ScalarJet2<S>& j) {
  detail::require_dim4(j.dimension(), "D3_closed");
  const auto t = detail::closed_form_terms(j);
  const MatrixX<S> eMeM = t.etaM * t.etaM;
  // C^{ab lm rs} M_ab M_lm M_rs, term by term:
  //  eta^{as} eta^{bl} eta^{mr}             -> tr((etaM)^3)
  //  -3 eta^{as} eta^{bl} P^{mr}            -> -3 tr(etaM etaM PM)
  //  +3 eta^{am} eta^{bl} P^{rs}            -> +3 tr((etaM)^2) tr(PM)
  //  +3 eta^{as} P^{bl} P^{mr}              -> +3 tr(etaM PM PM)
  //  -6 eta^{am} P^{bl} P^{rs}              -> -6 tr(etaM PM) tr(PM)
  //  +2 P^{ab} P^{lm} P^{rs}                -> +2 tr(PM)^3
  const S c_part = (eMeM * t.etaM).trace() - S(3) * (eMeM * t.PM).trace() + S(3) * eMeM.trace() * t.tr_PM +
                   S(3) * (t.etaM * t.PM * t.PM).trace() - S(6) * (t.etaM * t.PM).trace() * t.tr_PM +
                   S(2) * t.tr_PM * t.tr_PM * t.tr_PM;
  return c_part + S(3) * t.tr_etaM * t.tr_PM * t.tr_PM;
}

struct InvariantReport {
  int n = 0;
  std::vector<double> S;
  std::vector<double> sigma;
  Eigen::VectorXd eigenvalues;
  std::vector<double> D_closed;  // D1..D3 for n = 4, otherwise the n-dim D
  // |sigma(traces) - sigma(eigenvalues)| / max(1, |sigma|), worst component.
  double newton_residual = 0.0;
  // |S_k - (-1)^k D_k| / max(1, |S_k|) per closed form.
  std::vector<double> closed_form_residuals;
};

InvariantReport invariant_report(const ScalarJet2<double>& j);

/// |a - b| / max(1, |a|).
inline double relative_residual(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

}  // namespace jetred

#endif  // JETRED_MINKOWSKI_REDUCTION_HPP
