#include <doctest.h>

#include <cmath>
#include <random>

#include "jetred/errors.hpp"
#include "jetred/jet_extraction.hpp"
#include "jetred/rational.hpp"
#include "jetred/sampling.hpp"

using namespace jetred;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<int> exps(std::initializer_list<int> e) { return e; }

// Central differences of pointwise evaluation, step h.
ScalarJet2<double> finite_difference_jet(const TestFunction& f, const Eigen::VectorXd& x, double h) {
  const auto n = x.size();
  Eigen::VectorXd u(n);
  Eigen::MatrixXd u2(n, n);
  auto at = [&](Eigen::Index i, double si, Eigen::Index j, double sj) {
    Eigen::VectorXd y = x;
    y(i) += si * h;
    y(j) += sj * h;
    return evaluate(f, y);
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    u(i) = (at(i, 1, i, 0) - at(i, -1, i, 0)) / (2 * h);
    for (Eigen::Index j = 0; j < n; ++j)
      u2(i, j) = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4 * h * h);
  }
  return ScalarJet2<double>(u, 0.5 * (u2 + u2.transpose()));
}

double jet_relative_distance(const ScalarJet2<double>& a, const ScalarJet2<double>& b) {
  const double scale = std::max({1.0, max_abs(a.u()), max_abs(a.u2())});
  return std::max(max_abs(a.u() - b.u()), max_abs(a.u2() - b.u2())) / scale;
}

}  // namespace

TEST_CASE("jet2_of examples") {
  const TestFunction coord = MultivariatePolynomial(4, {{1.0, exps({1, 0, 0, 0})}});
  const auto c = jet2_of(coord, vec({0.3, 1, 2, 3}));
  CHECK(c.u() == vec({1, 0, 0, 0}));
  CHECK(max_abs(c.u2()) == 0.0);

  std::mt19937_64 rng(3);
  const Eigen::MatrixXd m = random_symmetric(rng, 4);
  const TestFunction quad = MultivariatePolynomial::quadratic(0.0, Eigen::VectorXd::Zero(4), m);
  const auto q = jet2_of(quad, Eigen::VectorXd::Zero(4));
  CHECK(max_abs(q.u()) == 0.0);
  CHECK(max_abs(q.u2() - m) < 1e-15);

  const TestFunction f = MultivariatePolynomial(
      4, {{1.0, exps({1, 0, 0, 0})}, {0.5, exps({0, 2, 0, 0})}, {1.0, exps({0, 0, 3, 0})}});
  const auto j = jet2_of(f, vec({0, 1, 1, 0}));
  CHECK(j.u() == vec({1, 1, 3, 0}));
  CHECK(j.u2() == Eigen::MatrixXd(vec({0, 1, 6, 0}).asDiagonal()));

  CHECK_THROWS_AS(jet2_of(f, vec({0, 1, 1})), ShapeError);
  CHECK_THROWS_AS(MultivariatePolynomial(2, {{1.0, exps({3, 2})}}), ShapeError);
  CHECK_THROWS_AS(MultivariatePolynomial(2, {{1.0, exps({-1, 0})}}), ShapeError);
}

TEST_CASE("composite jet2_of example") {
  // (x0 + 1/2 x1^2)^2 at (1, 1): q = 3/2, dq = (1, 1), ddq = diag(0, 1)
  QuadraticComposite f;
  f.outer.coefficients = {0.0, 0.0, 1.0};
  f.g = vec({1, 0});
  f.H = Eigen::MatrixXd(vec({0, 1}).asDiagonal());
  const auto j = jet2_of(TestFunction(f), vec({1, 1}));
  CHECK(max_abs(j.u() - vec({3, 3})) < 1e-15);
  Eigen::MatrixXd expect(2, 2);
  expect << 2, 2, 2, 5;
  CHECK(max_abs(j.u2() - expect) < 1e-15);

  f.outer.coefficients = {0, 0, 0, 0, 0, 1};
  CHECK_THROWS_AS(jet2_of(TestFunction(f), vec({1, 1})), ShapeError);
}

TEST_CASE("jet2_of matches central differences") {
  std::mt19937_64 rng(131);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 4;
    const TestFunction f = (t % 2) ? TestFunction(random_quartic(rng, n)) : TestFunction(random_composite(rng, n));
    const Eigen::VectorXd x = random_point(rng, n, 1.0);
    CHECK(jet_relative_distance(jet2_of(f, x), finite_difference_jet(f, x, 1e-4)) <= 1e-5);
  }
}

TEST_CASE("forward-mode evaluation agrees with closed-form jets") {
  std::mt19937_64 rng(137);
  for (int t = 0; t < 100; ++t) {
    const TestFunction f = (t % 2) ? TestFunction(random_quartic(rng, 4)) : TestFunction(random_composite(rng, 4));
    const Eigen::VectorXd x = random_point(rng, 4, 1.0);
    CHECK(jet_relative_distance(jet2_of(f, x), jet2_of_composed(f, ConformalElement(4), x)) <= 1e-13);
  }
}

TEST_CASE("chain rule closure for composed test functions") {
  std::mt19937_64 rng(139);
  int checked = 0;
  for (int t = 0; checked < 200 && t < 1000; ++t) {
    const ConformalElement g = random_element(rng(), 4, 0.5);
    const Eigen::VectorXd x = random_point(rng, 4, 0.5);
    const TestFunction f = (t % 2) ? TestFunction(random_quartic(rng, 4)) : TestFunction(random_composite(rng, 4));
    try {
      const auto direct = jet2_of_composed(f, g, x);
      const auto phi = map_jet2_at(g, x);
      const auto pulled = pullback_scalar_jet(jet2_of(f, phi.value), phi);
      CHECK(jet_relative_distance(direct, pulled) <= 1e-8);
      ++checked;
    } catch (const SingularPoint&) {
    }
  }
  CHECK(checked == 200);
}

TEST_CASE("jetk_of examples") {
  const UnivariatePolynomial<Rational> z{{Rational(0), Rational(1)}};
  CHECK(UnivariateJet<Rational>::from_series(jetk_of(z, Rational(5), 3)).derivatives()[0] == Rational(1));
  const auto zj = UnivariateJet<Rational>::from_series(jetk_of(z, Rational(5), 3));
  CHECK(zj[2] == Rational(0));
  CHECK(zj[3] == Rational(0));

  const UnivariatePolynomial<Rational> cube{{Rational(0), Rational(0), Rational(0), Rational(1)}};
  const auto cj = UnivariateJet<Rational>::from_series(jetk_of(cube, Rational(1), 3));
  CHECK(cj[1] == Rational(3));
  CHECK(cj[2] == Rational(6));
  CHECK(cj[3] == Rational(6));

  // z / (1 + z)
  const MobiusElement<Rational> m{Rational(1), Rational(0), Rational(1), Rational(1)};
  const auto mj = UnivariateJet<Rational>::from_series(jetk_of(m, Rational(0), 4));
  CHECK(mj[1] == Rational(1));
  CHECK(mj[2] == Rational(-2));
  CHECK(mj[3] == Rational(6));
  CHECK(mj[4] == Rational(-24));

  // double coefficients, shifted base point
  const UnivariatePolynomial<double> p{{2.0, -1.0, 0.5, 3.0}};
  const auto pj = UnivariateJet<double>::from_series(jetk_of(p, 0.5, 4));
  CHECK(pj[1] == doctest::Approx(-1.0 + 0.5 + 9.0 * 0.25));
  CHECK(pj[2] == doctest::Approx(1.0 + 18.0 * 0.5));
  CHECK(pj[3] == doctest::Approx(18.0));
  CHECK(pj[4] == doctest::Approx(0.0));
}
