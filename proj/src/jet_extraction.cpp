#include "jetred/jet_extraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace jetred {

namespace {

// x^e with x^0 = 1 (including 0^0).
double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Monomial prod x_i^(e_i - d_i) times the falling-factorial weights of d.
double monomial_derivative(const std::vector<int>& e, const Eigen::VectorXd& x, const std::vector<int>& d) {
  double r = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (d[i] > e[i]) return 0.0;
    for (int k = 0; k < d[i]; ++k) r *= e[i] - k;
    r *= ipow(x(static_cast<Eigen::Index>(i)), e[i] - d[i]);
  }
  return r;
}

// p, p', p'' at q.
std::array<double, 3> outer_derivatives(const UnivariatePolynomial<double>& p, double q) {
  std::array<double, 3> r{0.0, 0.0, 0.0};
  const auto& c = p.coefficients;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double k = static_cast<double>(i);
    r[0] += c[i] * ipow(q, static_cast<int>(i));
    if (i >= 1) r[1] += k * c[i] * ipow(q, static_cast<int>(i) - 1);
    if (i >= 2) r[2] += k * (k - 1) * c[i] * ipow(q, static_cast<int>(i) - 2);
  }
  return r;
}

ScalarJet2<double> jet2_closed(const MultivariatePolynomial& f, const Eigen::VectorXd& x) {
  const int n = f.dimension();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd u2 = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  for (const auto& t : f.terms()) {
    for (int i = 0; i < n; ++i) {
      d[i] += 1;
      u(i) += t.coefficient * monomial_derivative(t.exponents, x, d);
      for (int j = i; j < n; ++j) {
        d[j] += 1;
        u2(i, j) += t.coefficient * monomial_derivative(t.exponents, x, d);
        d[j] -= 1;
      }
      d[i] -= 1;
    }
  }
  u2.triangularView<Eigen::StrictlyLower>() = u2.transpose().triangularView<Eigen::StrictlyLower>();
  return ScalarJet2<double>(u, u2);
}

ScalarJet2<double> jet2_closed(const QuadraticComposite& f, const Eigen::VectorXd& x) {
  f.validate();
  const double q = f.c + f.g.dot(x) + 0.5 * x.dot(f.H * x);
  const Eigen::VectorXd dq = f.g + f.H * x;
  const auto p = outer_derivatives(f.outer, q);
  return ScalarJet2<double>(p[1] * dq, p[2] * dq * dq.transpose() + p[1] * f.H);
}

}  // namespace

MultivariatePolynomial::MultivariatePolynomial(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  if (n < 1) throw ShapeError("MultivariatePolynomial: dimension must be >= 1");
  for (const Term& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != n) throw ShapeError("MultivariatePolynomial: exponent length mismatch");
    if (!std::isfinite(t.coefficient)) throw DomainError("MultivariatePolynomial: non-finite coefficient");
    int deg = 0;
    for (int e : t.exponents) {
      if (e < 0) throw ShapeError("MultivariatePolynomial: negative exponent");
      deg += e;
    }
    if (deg > kMaxCatalogDegree) throw ShapeError("MultivariatePolynomial: degree exceeds 4");
  }
}

MultivariatePolynomial MultivariatePolynomial::quadratic(double c, const Eigen::VectorXd& g, const Eigen::MatrixXd& H) {
  const int n = static_cast<int>(g.size());
  if (H.rows() != n || H.cols() != n) throw ShapeError("MultivariatePolynomial::quadratic: shape mismatch");
  std::vector<Term> terms{{c, std::vector<int>(static_cast<std::size_t>(n), 0)}};
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[i] = 1;
    terms.push_back({g(i), e});
    for (int j = i; j < n; ++j) {
      std::vector<int> e2(static_cast<std::size_t>(n), 0);
      e2[i] += 1;
      e2[j] += 1;
      terms.push_back({i == j ? 0.5 * H(i, i) : 0.5 * (H(i, j) + H(j, i)), e2});
    }
  }
  return MultivariatePolynomial(n, std::move(terms));
}

void QuadraticComposite::validate() const {
  const int n = dimension();
  if (n < 1 || H.rows() != n || H.cols() != n) throw ShapeError("QuadraticComposite: shape mismatch");
  if (outer.degree() > kMaxCatalogDegree) throw ShapeError("QuadraticComposite: outer degree exceeds 4");
  if (!std::isfinite(c) || !g.allFinite() || !H.allFinite() ||
      !std::all_of(outer.coefficients.begin(), outer.coefficients.end(), [](double v) { return std::isfinite(v); }))
    throw DomainError("QuadraticComposite: non-finite coefficient");
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()))
    throw DomainError("QuadraticComposite: H must be symmetric");
}

int dimension_of(const TestFunction& f) {
  return std::visit([](const auto& fn) { return fn.dimension(); }, f);
}

double evaluate(const TestFunction& f, const Eigen::VectorXd& x) {
  return evaluate<double>(f, std::vector<double>(x.data(), x.data() + x.size()));
}

ScalarJet2<double> jet2_of(const TestFunction& f, const Eigen::VectorXd& x) {
  if (x.size() != dimension_of(f)) throw ShapeError("jet2_of: dimension mismatch");
  return std::visit([&](const auto& fn) { return jet2_closed(fn, x); }, f);
}

ScalarJet2<double> jet2_of_composed(const TestFunction& f, const ConformalElement& g, const Eigen::VectorXd& x) {
  const int n = g.dimension();
  if (x.size() != n || dimension_of(f) != n) throw ShapeError("jet2_of_composed: dimension mismatch");
  std::vector<MultiPoly2> vars;
  for (int i = 0; i < n; ++i) vars.push_back(MultiPoly2::variable(n, i, x(i)));
  const MultiPoly2 r = evaluate<MultiPoly2>(f, apply_point(g, vars));
  return ScalarJet2<double>(r.grad(), 0.5 * (r.hess() + r.hess().transpose()));
}

}  // namespace jetred
