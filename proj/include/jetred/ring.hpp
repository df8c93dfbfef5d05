#ifndef JETRED_RING_HPP
#define JETRED_RING_HPP

#include <complex>
#include <type_traits>

#include "jetred/errors.hpp"
#include "jetred/rational.hpp"

namespace jetred {

// Coefficient-ring hooks for the generic series and jet code. A coefficient
// type C supports +, -, * and provides zero_like, from_integer, reciprocal
// and is_exact_zero (found by overload resolution; LaurentPolynomial supplies
// its own).

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

template <class C>
inline constexpr bool is_floating_ring_v = std::is_floating_point_v<C> || is_complex_v<C>;

template <class C>
  requires is_floating_ring_v<C>
C zero_like(const C&) {
  return C(0);
}

template <class C>
  requires is_floating_ring_v<C>
C from_integer(const C&, long n) {
  return C(static_cast<double>(n));
}

template <class C>
  requires is_floating_ring_v<C>
C reciprocal(const C& x) {
  if (x == C(0)) throw DomainError("reciprocal: division by zero");
  return C(1) / x;
}

template <class C>
  requires is_floating_ring_v<C>
bool is_exact_zero(const C& x) {
  return x == C(0);
}

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational from_integer(const Rational&, long n) { return Rational(n); }
inline Rational reciprocal(const Rational& x) {
  if (x.is_zero()) throw DomainError("reciprocal: division by zero");
  return Rational(1) / x;
}
inline bool is_exact_zero(const Rational& x) { return x.is_zero(); }

}  // namespace jetred

#endif  // JETRED_RING_HPP
