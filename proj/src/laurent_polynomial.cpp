#include "jetred/laurent_polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "jetred/errors.hpp"

namespace jetred {

Variables make_variables(std::vector<std::string> names, std::vector<bool> invertible) {
  if (names.size() != invertible.size()) throw ShapeError("make_variables: names/invertible length mismatch");
  return std::make_shared<const VariableList>(VariableList{std::move(names), std::move(invertible)});
}

Variables jet_variables(int k, const std::vector<std::string>& extra, const std::vector<bool>& extra_invertible) {
  if (k < 1) throw ShapeError("jet_variables: order must be >= 1");
  if (extra.size() != extra_invertible.size()) throw ShapeError("jet_variables: extra symbol flags mismatch");
  std::vector<std::string> names;
  std::vector<bool> inv;
  for (int l = 1; l <= k; ++l) {
    names.push_back("u" + std::to_string(l));
    inv.push_back(l == 1);
  }
  names.insert(names.end(), extra.begin(), extra.end());
  inv.insert(inv.end(), extra_invertible.begin(), extra_invertible.end());
  return make_variables(std::move(names), std::move(inv));
}

bool GradedLexDescending::operator()(const Exponents& a, const Exponents& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return b < a;
}

LaurentPolynomial::LaurentPolynomial(Variables vars) : vars_(std::move(vars)) {
  if (!vars_) throw ShapeError("LaurentPolynomial: null variable list");
}

LaurentPolynomial LaurentPolynomial::constant(Variables vars, const Rational& c) {
  LaurentPolynomial p(std::move(vars));
  p.add_term(Exponents(p.vars_->size(), 0), c);
  return p;
}

LaurentPolynomial LaurentPolynomial::variable(Variables vars, std::size_t index) {
  if (index >= vars->size()) throw ShapeError("LaurentPolynomial::variable: index out of range");
  Exponents e(vars->size(), 0);
  e[index] = 1;
  return monomial(std::move(vars), Rational(1), std::move(e));
}

LaurentPolynomial LaurentPolynomial::variable(Variables vars, const std::string& name) {
  for (std::size_t i = 0; i < vars->size(); ++i)
    if (vars->names[i] == name) return variable(std::move(vars), i);
  throw ShapeError("LaurentPolynomial::variable: unknown symbol '" + name + "'");
}

LaurentPolynomial LaurentPolynomial::monomial(Variables vars, const Rational& c, Exponents exps) {
  LaurentPolynomial p(std::move(vars));
  p.check_exponents(exps);
  p.add_term(exps, c);
  return p;
}

bool LaurentPolynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_.begin()->first)
    if (e != 0) return false;
  return true;
}

Rational LaurentPolynomial::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::check_compatible(const LaurentPolynomial& o) const {
  if (vars_ != o.vars_ && *vars_ != *o.vars_) throw ShapeError("LaurentPolynomial: variable list mismatch");
}

void LaurentPolynomial::check_exponents(const Exponents& exps) const {
  if (exps.size() != vars_->size()) throw ShapeError("LaurentPolynomial: exponent arity mismatch");
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] < 0 && !vars_->invertible[i])
      throw DomainError("LaurentPolynomial: symbol '" + vars_->names[i] + "' is not invertible");
}

void LaurentPolynomial::add_term(const Exponents& exps, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  a.check_compatible(b);
  LaurentPolynomial r(a.vars_);
  Exponents e(a.vars_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

LaurentPolynomial operator/(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a * b.inverse(); }

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  a.check_compatible(b);
  return a.terms_ == b.terms_;
}

LaurentPolynomial LaurentPolynomial::inverse() const {
  if (terms_.size() != 1) throw DomainError("LaurentPolynomial::inverse: only single terms are invertible");
  const auto& [exps, c] = *terms_.begin();
  Exponents neg(exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) neg[i] = -exps[i];
  return monomial(vars_, Rational(1) / c, std::move(neg));
}

LaurentPolynomial LaurentPolynomial::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  LaurentPolynomial result = constant(vars_, Rational(1));
  LaurentPolynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

LaurentPolynomial LaurentPolynomial::derivative(std::size_t index) const {
  if (index >= vars_->size()) throw ShapeError("LaurentPolynomial::derivative: index out of range");
  LaurentPolynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    r.add_term(d, c * Rational(e[index]));
  }
  return r;
}

double LaurentPolynomial::evaluate(std::span<const double> point) const {
  if (point.size() != vars_->size()) throw ShapeError("LaurentPolynomial::evaluate: point arity mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= std::pow(point[i], e[i]);
    sum += t;
  }
  return sum;
}

Rational LaurentPolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_->size()) throw ShapeError("LaurentPolynomial::evaluate: point arity mismatch");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 && point[i].is_zero()) throw DomainError("LaurentPolynomial::evaluate: division by zero symbol");
      mpq_class p;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), point[i].value().get_num_mpz_t(), static_cast<unsigned long>(std::abs(e[i])));
      mpz_pow_ui(den.get_mpz_t(), point[i].value().get_den_mpz_t(), static_cast<unsigned long>(std::abs(e[i])));
      p = e[i] > 0 ? mpq_class(num, den) : mpq_class(den, num);
      t *= Rational(p);
    }
    sum += t;
  }
  return sum;
}

std::string LaurentPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_->names[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    const Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) out << '-';
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      out << mag.str();
    } else if (mag.is_one()) {
      out << mono;
    } else {
      out << mag.str() << '*' << mono;
    }
  }
  return out.str();
}

}  // namespace jetred
