#include "jetred/rational.hpp"

#include <stdexcept>
#include <string>

#include "jetred/errors.hpp"

namespace jetred {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpq_class(mpz_class(s, 10)));
    mpz_class num(s.substr(0, slash), 10);
    mpz_class den(s.substr(slash + 1), 10);
    if (den == 0) throw DomainError("Rational: zero denominator in '" + s + "'");
    return Rational(mpq_class(num, den));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

// gmpxx arithmetic keeps results canonical as long as operands are.
Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

Rational factorial(int l) {
  mpz_class f = 1;
  for (int i = 2; i <= l; ++i) f *= i;
  return Rational(mpq_class(f));
}

}  // namespace jetred
