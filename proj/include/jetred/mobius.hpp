#ifndef JETRED_MOBIUS_HPP
#define JETRED_MOBIUS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "jetred/errors.hpp"
#include "jetred/laurent_polynomial.hpp"
#include "jetred/ring.hpp"
#include "jetred/truncated_series.hpp"

namespace jetred {

/// Derivative data (u_1, ..., u_k) of an analytic function at a point, with
/// the value u_0 dropped.
template <class C>
class UnivariateJet {
 public:
  explicit UnivariateJet(std::vector<C> derivatives) : u_(std::move(derivatives)) {
    if (u_.empty()) throw ShapeError("UnivariateJet: order must be >= 1");
  }

  static UnivariateJet from_series(const TruncatedSeries<C>& s) {
    std::vector<C> u;
    u.reserve(static_cast<std::size_t>(s.order()));
    long fact = 1;
    for (int l = 1; l <= s.order(); ++l) {
      fact *= l;
      u.push_back(from_integer(s[l], fact) * s[l]);
    }
    return UnivariateJet(std::move(u));
  }

  int order() const { return static_cast<int>(u_.size()); }
  /// u_l, 1 <= l <= order().
  const C& operator[](int l) const { return u_.at(static_cast<std::size_t>(l - 1)); }
  std::span<const C> derivatives() const { return u_; }

  /// Taylor coefficients u_l / l!.
  TruncatedSeries<C> to_series() const {
    std::vector<C> c;
    c.reserve(u_.size());
    long fact = 1;
    for (int l = 1; l <= order(); ++l) {
      fact *= l;
      c.push_back(reciprocal(from_integer(u_[l - 1], fact)) * u_[l - 1]);
    }
    return TruncatedSeries<C>(std::move(c));
  }

  friend bool operator==(const UnivariateJet& a, const UnivariateJet& b) { return a.u_ == b.u_; }

 private:
  std::vector<C> u_;
};

/// z -> a z / (c z + 1), an element of the stabilizer of 0.
template <class C>
struct MobiusStabilizerElement {
  C a;
  C c;

  MobiusStabilizerElement(C a_, C c_) : a(std::move(a_)), c(std::move(c_)) {
    if (is_exact_zero(a)) throw DomainError("MobiusStabilizerElement: a must be nonzero");
  }
};

/// z -> (a z + b) / (c z + d), ad - bc != 0.
template <class C>
struct MobiusElement {
  C a, b, c, d;

  MobiusElement(C a_, C b_, C c_, C d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (is_exact_zero(determinant())) throw DomainError("MobiusElement: ad - bc must be nonzero");
  }

  static MobiusElement identity(const C& like) {
    return {from_integer(like, 1), zero_like(like), zero_like(like), from_integer(like, 1)};
  }

  C determinant() const { return a * d - b * c; }

  C apply(const C& z) const {
    const C den = c * z + d;
    if (is_exact_zero(den)) throw SingularPoint("MobiusElement: pole at evaluation point");
    return (a * z + b) * reciprocal(den);
  }
};

/// Order-k jet of z -> a z / (c z + 1) at 0: a z sum_{m<k} (-c z)^m.
template <class C>
TruncatedSeries<C> mobius_jet(const MobiusStabilizerElement<C>& h, int k) {
  if (k < 1) throw ShapeError("mobius_jet: order must be >= 1");
  std::vector<C> coeffs;
  coeffs.reserve(static_cast<std::size_t>(k));
  C term = h.a;
  const C minus_c = -h.c;
  for (int l = 1; l <= k; ++l) {
    coeffs.push_back(term);
    term = term * minus_c;
  }
  return TruncatedSeries<C>(std::move(coeffs));
}

/// Prolonged action of the stabilizer: the jet of f(a z / (c z + 1)).
template <class C>
UnivariateJet<C> stabilizer_action(const UnivariateJet<C>& u, const MobiusStabilizerElement<C>& h) {
  return UnivariateJet<C>::from_series(series_compose(u.to_series(), mobius_jet(h, u.order())));
}

struct ProjectionOptions {
  // Floating jets with |u1| below this fraction of max |u_l| are rejected.
  double relative_threshold = 1e-8;
};

namespace detail {

template <class C>
void require_regular_jet(const UnivariateJet<C>& u, const ProjectionOptions& opts) {
  const char* msg = "jet in the invariant subspace u1=0";
  if (is_exact_zero(u[1])) throw DomainError(msg);
  if constexpr (is_floating_ring_v<C>) {
    double scale = 0.0;
    for (const C& x : u.derivatives()) scale = std::max(scale, static_cast<double>(std::abs(x)));
    if (!(std::abs(u[1]) >= opts.relative_threshold * scale)) throw DomainError(msg);
  }
}

}  // namespace detail

/// The stabilizer element a = 1/u1, c = a u2 / (2 u1) that maps u to its
/// orbit representative (1, 0, w3, ..., wk).
template <class C>
MobiusStabilizerElement<C> canonical_frame(const UnivariateJet<C>& u, const ProjectionOptions& opts = {}) {
  detail::require_regular_jet(u, opts);
  C a = reciprocal(u[1]);
  if (u.order() < 2) return {a, zero_like(a)};
  C c = u[2] * a * a * reciprocal(from_integer(a, 2));
  return {std::move(a), std::move(c)};
}

/// Orbit representative with u1 = 1 and u2 = 0.
template <class C>
UnivariateJet<C> canonical_representative(const UnivariateJet<C>& u, const ProjectionOptions& opts = {}) {
  return stabilizer_action(u, canonical_frame(u, opts));
}

/// Invariant coordinates (w3, ..., wk) of the orbit of u.
template <class C>
std::vector<C> canonical_projection(const UnivariateJet<C>& u, const ProjectionOptions& opts = {}) {
  const UnivariateJet<C> rep = canonical_representative(u, opts);
  std::vector<C> w;
  for (int l = 3; l <= rep.order(); ++l) w.push_back(rep[l]);
  return w;
}

/// (1/u1^2) (u3/u1 - 3/2 (u2/u1)^2): the Schwarzian with a 1/f'^2 weight.
template <class C>
C eval_D1(const UnivariateJet<C>& u) {
  if (u.order() < 3) throw ShapeError("eval_D1: jet order must be >= 3");
  if (is_exact_zero(u[1])) throw DomainError("eval_D1: jet in the invariant subspace u1=0");
  const C inv = reciprocal(u[1]);
  const C r2 = u[2] * inv;
  const C r3 = u[3] * inv;
  return inv * inv * (r3 - from_integer(r2, 3) * reciprocal(from_integer(r2, 2)) * r2 * r2);
}

/// u4/u1^4 - 6 u3 u2/u1^5 + 6 u2^3/u1^6.
template <class C>
C eval_D2(const UnivariateJet<C>& u) {
  if (u.order() < 4) throw ShapeError("eval_D2: jet order must be >= 4");
  if (is_exact_zero(u[1])) throw DomainError("eval_D2: jet in the invariant subspace u1=0");
  const C inv = reciprocal(u[1]);
  const C inv2 = inv * inv;
  const C inv4 = inv2 * inv2;
  const C six = from_integer(inv, 6);
  return inv4 * (u[4] - six * u[3] * u[2] * inv + six * u[2] * u[2] * u[2] * inv2);
}

/// Taylor data of t_g at z0: value t_g(z0) and the order-k tail.
template <class C>
SeriesWithConstant<C> mobius_jet_at(const MobiusElement<C>& g, const C& z0, int k) {
  if (k < 1) throw ShapeError("mobius_jet_at: order must be >= 1");
  const C den0 = g.c * z0 + g.d;
  if (is_exact_zero(den0)) throw SingularPoint("mobius_jet_at: pole at base point");
  if constexpr (is_floating_ring_v<C>) {
    if (std::abs(den0) < 1e-12) throw SingularPoint("mobius_jet_at: pole at base point");
  }
  const C num0 = g.a * z0 + g.b;
  std::vector<C> den_tail(static_cast<std::size_t>(k), zero_like(z0));
  den_tail[0] = g.c;
  const auto recip = series_reciprocal_shifted(den0, TruncatedSeries<C>(std::move(den_tail)));

  std::vector<C> num(static_cast<std::size_t>(k) + 1, zero_like(z0));
  num[0] = num0;
  if (k >= 1) num[1] = g.a;
  std::vector<C> r = detail::dense(recip.tail);
  r[0] = recip.constant;
  std::vector<C> prod = detail::mul_dense(num, r, k);
  C value = prod[0];
  return {std::move(value), detail::drop_constant(std::move(prod))};
}

/// Jet at z0 of f o t_g, given the jet of f at t_g(z0).
template <class C>
UnivariateJet<C> chain_jet(const UnivariateJet<C>& f_at_image, const MobiusElement<C>& g, const C& z0) {
  const auto tg = mobius_jet_at(g, z0, f_at_image.order());
  return UnivariateJet<C>::from_series(series_compose(f_at_image.to_series(), tg.tail));
}

/// The invariants w3..wk as exact Laurent polynomials in u1..uk.
struct InvariantSymbolFamily {
  int order = 0;
  Variables variables;
  std::vector<LaurentPolynomial> symbols;  // symbols[i] is w_{i+3}

  std::string name(std::size_t i) const { return "w" + std::to_string(i + 3); }
};

/// Throws DomainError for k < 3.
InvariantSymbolFamily symbolic_invariants(int k);

/// Symbolic jet (u1, ..., uk) over `vars`, whose first k symbols are u1..uk.
UnivariateJet<LaurentPolynomial> symbolic_jet(const Variables& vars, int k);

}  // namespace jetred

#endif  // JETRED_MOBIUS_HPP
