#ifndef JETRED_JET_EXTRACTION_HPP
#define JETRED_JET_EXTRACTION_HPP

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "jetred/conformal_maps.hpp"
#include "jetred/errors.hpp"
#include "jetred/minkowski_jets.hpp"
#include "jetred/mobius.hpp"
#include "jetred/ring.hpp"
#include "jetred/truncated_series.hpp"

namespace jetred {

inline constexpr int kMaxCatalogDegree = 4;

/// Sum of c * prod x_i^e_i with total degree <= 4.
class MultivariatePolynomial {
 public:
  struct Term {
    double coefficient;
    std::vector<int> exponents;
  };

  MultivariatePolynomial(int n, std::vector<Term> terms);

  /// c + g.x + 1/2 x^T H x.
  static MultivariatePolynomial quadratic(double c, const Eigen::VectorXd& g, const Eigen::MatrixXd& H);

  int dimension() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  template <class S>
  S evaluate(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != n_) throw ShapeError("MultivariatePolynomial: dimension mismatch");
    S sum = x[0] * 0.0;
    for (const Term& t : terms_) {
      S m = x[0] * 0.0 + t.coefficient;
      for (int i = 0; i < n_; ++i)
        for (int p = 0; p < t.exponents[static_cast<std::size_t>(i)]; ++p) m *= x[static_cast<std::size_t>(i)];
      sum += m;
    }
    return sum;
  }

 private:
  int n_;
  std::vector<Term> terms_;
};

/// Dense univariate polynomial sum_i c_i z^i, templated on the coefficient ring.
template <class C>
struct UnivariatePolynomial {
  std::vector<C> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }

  template <class S>
  S evaluate(const S& z) const {
    S acc = zero_like(z);
    if (coefficients.empty()) return acc;
    acc = acc + coefficients.back();
    for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
};

/// p(c + g.x + 1/2 x^T H x) with deg p <= 4.
struct QuadraticComposite {
  UnivariatePolynomial<double> outer;
  double c = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd H;

  int dimension() const { return static_cast<int>(g.size()); }
  void validate() const;

  template <class S>
  S evaluate(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != dimension()) throw ShapeError("QuadraticComposite: dimension mismatch");
    S q = x[0] * 0.0 + c;
    for (int i = 0; i < dimension(); ++i) {
      q += g(i) * x[static_cast<std::size_t>(i)];
      for (int j = 0; j < dimension(); ++j) q += 0.5 * H(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    }
    return outer.evaluate(q);
  }
};

using TestFunction = std::variant<MultivariatePolynomial, QuadraticComposite>;

int dimension_of(const TestFunction& f);

template <class S>
S evaluate(const TestFunction& f, const std::vector<S>& x) {
  return std::visit([&](const auto& fn) { return fn.template evaluate<S>(x); }, f);
}

double evaluate(const TestFunction& f, const Eigen::VectorXd& x);

/// Exact first and second partials at x by closed-form differentiation.
ScalarJet2<double> jet2_of(const TestFunction& f, const Eigen::VectorXd& x);

/// 2-jet of f o g at x by forward-mode evaluation of the whole word.
ScalarJet2<double> jet2_of_composed(const TestFunction& f, const ConformalElement& g, const Eigen::VectorXd& x);

/// Taylor coefficients u_l / l!, l = 1..k, of p around z0 (constant term dropped).
template <class C>
TruncatedSeries<C> jetk_of(const UnivariatePolynomial<C>& p, const C& z0, int k) {
  if (k < 1) throw ShapeError("jetk_of: order must be >= 1");
  // Taylor shift by synthetic division.
  std::vector<C> c = p.coefficients;
  const std::size_t d = c.size();
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = d - 1; j > i; --j) c[j - 1] += z0 * c[j];
  std::vector<C> out(static_cast<std::size_t>(k), zero_like(z0));
  for (std::size_t l = 1; l < d && l <= static_cast<std::size_t>(k); ++l) out[l - 1] = c[l];
  return TruncatedSeries<C>(std::move(out));
}

/// Taylor coefficients of a Moebius map around z0 (constant term dropped).
template <class C>
TruncatedSeries<C> jetk_of(const MobiusElement<C>& g, const C& z0, int k) {
  return mobius_jet_at(g, z0, k).tail;
}

}  // namespace jetred

#endif  // JETRED_JET_EXTRACTION_HPP
