#ifndef JETRED_LAURENT_POLYNOMIAL_HPP
#define JETRED_LAURENT_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "jetred/rational.hpp"

namespace jetred {

/// Ordered list of symbols. Only symbols flagged invertible may carry
/// negative exponents.
struct VariableList {
  std::vector<std::string> names;
  std::vector<bool> invertible;

  std::size_t size() const { return names.size(); }
  friend bool operator==(const VariableList&, const VariableList&) = default;
};

using Variables = std::shared_ptr<const VariableList>;

Variables make_variables(std::vector<std::string> names, std::vector<bool> invertible);

/// u1..uk with u1 invertible, optionally followed by `extra` symbols.
Variables jet_variables(int k, const std::vector<std::string>& extra = {},
                        const std::vector<bool>& extra_invertible = {});

using Exponents = std::vector<int>;

/// Graded-lex order, descending: higher total degree first, then larger
/// exponent of the earlier variable first. Map iteration order is the
/// printing order.
struct GradedLexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Exact multivariate Laurent polynomial with Rational coefficients.
class LaurentPolynomial {
 public:
  using Terms = std::map<Exponents, Rational, GradedLexDescending>;

  explicit LaurentPolynomial(Variables vars);

  static LaurentPolynomial constant(Variables vars, const Rational& c);
  static LaurentPolynomial variable(Variables vars, std::size_t index);
  static LaurentPolynomial variable(Variables vars, const std::string& name);
  static LaurentPolynomial monomial(Variables vars, const Rational& c, Exponents exps);

  const Variables& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const;

  /// Coefficient of the given exponent vector (zero if absent).
  Rational coefficient(const Exponents& exps) const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const Rational& c);

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a *= c; }
  friend LaurentPolynomial operator*(const Rational& c, LaurentPolynomial a) { return a *= c; }
  /// Division by a monomial in invertible symbols.
  friend LaurentPolynomial operator/(const LaurentPolynomial& a, const LaurentPolynomial& b);

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);

  /// Inverse of a single term whose symbols are all invertible; throws
  /// DomainError otherwise.
  LaurentPolynomial inverse() const;
  LaurentPolynomial pow(int e) const;
  LaurentPolynomial derivative(std::size_t index) const;

  double evaluate(std::span<const double> point) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Canonical text form: "u1^-3*u3 - 3/2*u1^-4*u2^2".
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& p) { return os << p.str(); }

 private:
  void check_compatible(const LaurentPolynomial& o) const;
  void check_exponents(const Exponents& exps) const;
  void add_term(const Exponents& exps, const Rational& c);

  Variables vars_;
  Terms terms_;
};

// Coefficient-ring hooks used by the generic series code.
inline LaurentPolynomial zero_like(const LaurentPolynomial& like) {
  return LaurentPolynomial(like.variables());
}
inline LaurentPolynomial from_integer(const LaurentPolynomial& like, long n) {
  return LaurentPolynomial::constant(like.variables(), Rational(n));
}
inline LaurentPolynomial reciprocal(const LaurentPolynomial& x) { return x.inverse(); }
inline bool is_exact_zero(const LaurentPolynomial& x) { return x.is_zero(); }

}  // namespace jetred

#endif  // JETRED_LAURENT_POLYNOMIAL_HPP
