#ifndef JETRED_TRUNCATED_SERIES_HPP
#define JETRED_TRUNCATED_SERIES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetred/errors.hpp"
#include "jetred/ring.hpp"

namespace jetred {

/// Power series c_1 z + ... + c_k z^k with zero constant term, truncated at
/// order k. Coefficients are Taylor coefficients, not derivatives.
template <class C>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::vector<C> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw ShapeError("TruncatedSeries: order must be >= 1");
  }

  /// z truncated at order k, with coefficients built like `like`.
  static TruncatedSeries identity(const C& like, int k) {
    if (k < 1) throw ShapeError("TruncatedSeries: order must be >= 1");
    std::vector<C> c(static_cast<std::size_t>(k), zero_like(like));
    c[0] = from_integer(like, 1);
    return TruncatedSeries(std::move(c));
  }

  int order() const { return static_cast<int>(coeffs_.size()); }

  /// Coefficient of z^l, 1 <= l <= order().
  const C& operator[](int l) const { return coeffs_.at(static_cast<std::size_t>(l - 1)); }
  std::span<const C> coefficients() const { return coeffs_; }

  /// Forgets every coefficient above order j.
  TruncatedSeries truncate(int j) const {
    if (j < 1 || j > order()) throw ShapeError("TruncatedSeries::truncate: bad order");
    return TruncatedSeries(std::vector<C>(coeffs_.begin(), coeffs_.begin() + j));
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<C> coeffs_;
};

/// constant + tail, the expansion of a function that does not vanish at 0.
template <class C>
struct SeriesWithConstant {
  C constant;
  TruncatedSeries<C> tail;
};

namespace detail {

inline void require_same_order(int a, int b, const char* what) {
  if (a != b) throw ShapeError(std::string(what) + ": order mismatch");
}

// Dense truncated product of coefficient vectors indexed from degree 0.
template <class C>
std::vector<C> mul_dense(const std::vector<C>& p, const std::vector<C>& q, int k) {
  std::vector<C> r(static_cast<std::size_t>(k) + 1, zero_like(p[0]));
  for (std::size_t i = 0; i < p.size() && i <= static_cast<std::size_t>(k); ++i) {
    if (is_exact_zero(p[i])) continue;
    for (std::size_t j = 0; j < q.size() && i + j <= static_cast<std::size_t>(k); ++j) {
      if (is_exact_zero(q[j])) continue;
      r[i + j] += p[i] * q[j];
    }
  }
  return r;
}

template <class C>
std::vector<C> dense(const TruncatedSeries<C>& s) {
  std::vector<C> d;
  d.reserve(static_cast<std::size_t>(s.order()) + 1);
  d.push_back(zero_like(s[1]));
  for (const C& c : s.coefficients()) d.push_back(c);
  return d;
}

template <class C>
TruncatedSeries<C> drop_constant(std::vector<C> d) {
  return TruncatedSeries<C>(std::vector<C>(std::make_move_iterator(d.begin() + 1), std::make_move_iterator(d.end())));
}

}  // namespace detail

template <class C>
TruncatedSeries<C> series_add(const TruncatedSeries<C>& s, const TruncatedSeries<C>& t) {
  detail::require_same_order(s.order(), t.order(), "series_add");
  std::vector<C> r(s.coefficients().begin(), s.coefficients().end());
  for (int l = 1; l <= s.order(); ++l) r[l - 1] += t[l];
  return TruncatedSeries<C>(std::move(r));
}

/// Cauchy product; every monomial of degree > k is discarded.
template <class C>
TruncatedSeries<C> series_mul(const TruncatedSeries<C>& s, const TruncatedSeries<C>& t) {
  detail::require_same_order(s.order(), t.order(), "series_mul");
  return detail::drop_constant(detail::mul_dense(detail::dense(s), detail::dense(t), s.order()));
}

/// outer(inner(z)) through degree k, Horner evaluation in the truncated ring.
template <class C>
TruncatedSeries<C> series_compose(const TruncatedSeries<C>& outer, const TruncatedSeries<C>& inner) {
  detail::require_same_order(outer.order(), inner.order(), "series_compose");
  const int k = outer.order();
  const std::vector<C> g = detail::dense(inner);
  std::vector<C> acc{outer[k]};
  for (int l = k - 1; l >= 1; --l) {
    acc = detail::mul_dense(g, acc, k);
    acc[0] += outer[l];
  }
  return detail::drop_constant(detail::mul_dense(g, acc, k));
}

/// 1/(c0 + tail(z)) through order k of `tail`, as a finite geometric series.
template <class C>
SeriesWithConstant<C> series_reciprocal_shifted(const C& c0, const TruncatedSeries<C>& tail) {
  const int k = tail.order();
  const C inv = reciprocal(c0);  // throws on non-invertible c0
  // 1/(c0 + t) = inv * sum_m (-inv t)^m, m = 0..k
  std::vector<C> x = detail::dense(tail);
  for (auto& c : x) c = -(inv * c);
  std::vector<C> sum(static_cast<std::size_t>(k) + 1, zero_like(c0));
  sum[0] = from_integer(c0, 1);
  std::vector<C> power = sum;
  for (int m = 1; m <= k; ++m) {
    power = detail::mul_dense(power, x, k);
    for (int i = 0; i <= k; ++i) sum[i] += power[i];
  }
  for (auto& c : sum) c = inv * c;
  C constant = sum[0];
  return {std::move(constant), detail::drop_constant(std::move(sum))};
}

}  // namespace jetred

#endif  // JETRED_TRUNCATED_SERIES_HPP
