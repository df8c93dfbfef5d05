#include <doctest.h>

#include <cmath>
#include <random>

#include "jetred/conformal_maps.hpp"
#include "jetred/errors.hpp"
#include "jetred/minkowski_reduction.hpp"
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

// Central differences of apply_point: A from first differences, A2 from
// second differences with step h.
Map2Jet<double> finite_difference_jet(const ConformalElement& g, const Eigen::VectorXd& x, double h) {
  const int n = g.dimension();
  Map2Jet<double> fd{apply_point(g, x), Eigen::MatrixXd(n, n), std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd(n, n))};
  auto at = [&](int i, double si, int j, double sj) {
    Eigen::VectorXd y = x;
    y(i) += si * h;
    y(j) += sj * h;
    return apply_point(g, y);
  };
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = h;
    fd.A.col(i) = (apply_point(g, Eigen::VectorXd(x + e)) - apply_point(g, Eigen::VectorXd(x - e))) / (2 * h);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd d2 =
          (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4 * h * h);
      for (int mu = 0; mu < n; ++mu) fd.A2[mu](i, j) = d2(mu);
    }
  }
  return fd;
}

double jet_distance(const Map2Jet<double>& a, const Map2Jet<double>& b) {
  double scale = std::max({1.0, max_abs(a.A), max_abs(a.value)});
  double d = std::max(max_abs(a.value - b.value), max_abs(a.A - b.A));
  for (std::size_t mu = 0; mu < a.A2.size(); ++mu) {
    scale = std::max(scale, max_abs(a.A2[mu]));
    d = std::max(d, max_abs(a.A2[mu] - b.A2[mu]));
  }
  return d / scale;
}

}  // namespace

TEST_CASE("apply_point examples") {
  const Eigen::VectorXd x = vec({0.1, -0.2, 0.3, 0.4});
  CHECK(apply_point(ConformalElement(4, {Translation{vec({1, 2, 3, 4})}}), x) == x + vec({1, 2, 3, 4}));
  CHECK(apply_point(ConformalElement(4, {SpecialConformal{Eigen::VectorXd::Zero(4)}}), x) == x);
  CHECK(apply_point(ConformalElement(4), x) == x);

  const Eigen::VectorXd y = apply_point(ConformalElement(4, {SpecialConformal{vec({0, 1, 0, 0})}}), vec({0, 1, 0, 0}));
  CHECK(max_abs(y - vec({0, 0.5, 0, 0})) < 1e-16);

  // b = -e1 at x = e1: denominator 1 - 2 + 1 = 0
  CHECK_THROWS_AS(apply_point(ConformalElement(4, {SpecialConformal{vec({0, -1, 0, 0})}}), vec({0, 1, 0, 0})),
                  SingularPoint);
  CHECK_THROWS_AS(apply_point(ConformalElement(4), vec({0, 1, 0})), ShapeError);
}

TEST_CASE("words apply left to right and compose by concatenation") {
  const ConformalElement t(4, {Translation{vec({1, 0, 0, 0})}});
  const ConformalElement d(4, {Dilatation{2.0}});
  const Eigen::VectorXd x = vec({1, 1, 1, 1});
  CHECK(apply_point(ConformalElement(4, {Translation{vec({1, 0, 0, 0})}, Dilatation{2.0}}), x) == vec({4, 2, 2, 2}));
  CHECK(apply_point(d * t, x) == vec({4, 2, 2, 2}));
  CHECK(apply_point(t * d, x) == vec({3, 2, 2, 2}));
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(ConformalElement(4, {Dilatation{0.0}}), DomainError);
  CHECK_THROWS_AS(ConformalElement(4, {Lorentz{Eigen::MatrixXd(2.0 * Eigen::MatrixXd::Identity(4, 4))}}), DomainError);
  CHECK_THROWS_AS(ConformalElement(4, {Translation{vec({1, 0, 0})}}), ShapeError);
  CHECK_THROWS_AS(ConformalElement(1), ShapeError);
}

TEST_CASE("map_jet2_at examples") {
  const Eigen::VectorXd x = vec({0.3, 0.1, -0.2, 0.5});
  const auto dil = map_jet2_at(ConformalElement(4, {Dilatation{3.0}}), x);
  CHECK(max_abs(dil.value - 3.0 * x) < 1e-16);
  CHECK(max_abs(dil.A - 3.0 * Eigen::MatrixXd::Identity(4, 4)) == 0.0);
  for (const auto& h : dil.A2) CHECK(max_abs(h) == 0.0);

  // at the origin: A = I and A2 from x - 2x(b.x) + b x^2
  const Eigen::VectorXd b = vec({0.2, -0.4, 0.1, 0.3});
  const Eigen::VectorXd b_low = Metric(4).lower(b);
  const auto k = map_jet2_at(ConformalElement(4, {SpecialConformal{b}}), Eigen::VectorXd::Zero(4));
  CHECK(max_abs(k.A - Eigen::MatrixXd::Identity(4, 4)) < 1e-16);
  CHECK(max_abs(k.value) == 0.0);
  for (int mu = 0; mu < 4; ++mu) {
    Eigen::MatrixXd expect = 2.0 * b(mu) * Metric(4).matrix();
    expect.row(mu) -= 2.0 * b_low.transpose();
    expect.col(mu) -= 2.0 * b_low;
    CHECK(max_abs(k.A2[mu] - expect) < 1e-15);
  }

  // b = e1 is singular at e0 (b^2 x^2 = -1); half-way along the time axis it is not
  const ConformalElement sct(4, {SpecialConformal{vec({0, 1, 0, 0})}});
  CHECK_THROWS_AS(map_jet2_at(sct, vec({1, 0, 0, 0})), SingularPoint);
  const auto fd = finite_difference_jet(sct, vec({0.5, 0, 0, 0}), 1e-4);
  CHECK(jet_distance(map_jet2_at(sct, vec({0.5, 0, 0, 0})), fd) < 1e-6);
}

TEST_CASE("generator jets match central differences") {
  std::mt19937_64 rng(89);
  int checked = 0;
  for (int t = 0; checked < 200 && t < 1000; ++t) {
    RandomElementOptions opts;
    opts.forced = static_cast<GeneratorKind>(t % 4);
    const ConformalElement g = random_element(rng(), 1, 0.5, opts);
    const Eigen::VectorXd x = random_point(rng, 4, 0.5);
    Map2Jet<double> jet, fd;
    try {
      jet = map_jet2_at(g, x);
      fd = finite_difference_jet(g, x, 1e-4);
    } catch (const SingularPoint&) {
      continue;
    }
    CHECK(jet_distance(jet, fd) <= 1e-5);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("conformality certificate") {
  std::mt19937_64 rng(97);
  const Eigen::MatrixXd eta = Metric(4).matrix();
  for (int t = 0; t < 300; ++t) {
    const ConformalElement g = random_element(rng(), 5, 0.5);
    const Eigen::VectorXd x = random_point(rng, 4, 0.5);
    Map2Jet<double> jet;
    try {
      jet = map_jet2_at(g, x);
    } catch (const SingularPoint&) {
      continue;
    }
    const Eigen::MatrixXd G = jet.A.transpose() * eta * jet.A;
    const double factor = G(1, 1);
    CHECK(factor > 0.0);
    CHECK(max_abs(G - factor * eta) <= 1e-8 * jet.A.squaredNorm());
  }
}

TEST_CASE("chain rule consistency of map_jet2_at") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 200; ++t) {
    const ConformalElement g1 = random_element(rng(), 3, 0.5);
    const ConformalElement g2 = random_element(rng(), 3, 0.5);
    const Eigen::VectorXd x = random_point(rng, 4, 0.5);
    try {
      const auto whole = map_jet2_at(g1 * g2, x);
      const auto inner = map_jet2_at(g2, x);
      const auto parts = compose_jets(map_jet2_at(g1, inner.value), inner);
      CHECK(jet_distance(whole, parts) <= 1e-8);
    } catch (const SingularPoint&) {
    }
  }
}

TEST_CASE("random_element") {
  const ConformalElement a = random_element(1234, 6, 0.5);
  const ConformalElement b = random_element(1234, 6, 0.5);
  CHECK(format_word(a) == format_word(b));
  CHECK(format_word(a) != format_word(random_element(1235, 6, 0.5)));

  RandomElementOptions only_dil;
  only_dil.forced = GeneratorKind::Dilatation;
  const ConformalElement d = random_element(9, 1, 0.5, only_dil);
  REQUIRE(d.word().size() == 1);
  CHECK(kind_of(d.word()[0]) == GeneratorKind::Dilatation);

  RandomElementOptions stab;
  stab.stabilizer_only = true;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const ConformalElement g = random_element(rng(), 6, 1.0, t % 2 ? stab : RandomElementOptions{});
    CHECK(!g.word().empty());
    CHECK(g.word().size() <= 6);
    for (const auto& gen : g.word()) {
      if (kind_of(gen) == GeneratorKind::Lorentz) CHECK(is_lorentz(std::get<Lorentz>(gen).L, 1e-10));
      if (t % 2) CHECK(kind_of(gen) != GeneratorKind::Translation);
    }
    if (t % 2) CHECK(max_abs(apply_point(g, Eigen::VectorXd::Zero(4))) == 0.0);
  }
  CHECK_THROWS_AS(random_element(1, 0, 0.5), ShapeError);
}

TEST_CASE("word text form") {
  const ConformalElement g = parse_word("T(0.1,0,0,0);D(2);K(0,0.3,0,0);R(boost:0.5,axis:1)", 4);
  REQUIRE(g.word().size() == 4);
  CHECK(kind_of(g.word()[0]) == GeneratorKind::Translation);
  CHECK(kind_of(g.word()[1]) == GeneratorKind::Dilatation);
  CHECK(kind_of(g.word()[2]) == GeneratorKind::SpecialConformal);
  CHECK(kind_of(g.word()[3]) == GeneratorKind::Lorentz);
  const Eigen::MatrixXd& L = std::get<Lorentz>(g.word()[3]).L;
  CHECK(L(0, 1) == std::sinh(0.5));
  CHECK(L(1, 1) == std::cosh(0.5));

  const ConformalElement r = parse_word(" R(rot:1.5707963267948966, from:1, to:2) ", 4);
  CHECK(max_abs(apply_point(r, vec({0, 1, 0, 0})) - vec({0, 0, 1, 0})) < 1e-15);

  CHECK(format_word(parse_word("D(2);T(1,0,0,0.25)", 4)) == "D(2);T(1,0,0,0.25)");
  CHECK(parse_word("", 4).word().empty());

  std::mt19937_64 rng(113);
  for (int t = 0; t < 50; ++t) {
    const ConformalElement w = random_element(rng(), 6, 0.7);
    const std::string text = format_word(w);
    CHECK(format_word(parse_word(text, 4)) == text);
    const Eigen::VectorXd x = random_point(rng, 4, 0.3);
    try {
      CHECK(apply_point(parse_word(text, 4), x) == apply_point(w, x));
    } catch (const SingularPoint&) {
    }
  }

  CHECK_THROWS_AS(parse_word("T(1,2)", 4), ParseError);
  CHECK_THROWS_AS(parse_word("Q(1)", 4), ParseError);
  CHECK_THROWS_AS(parse_word("D(x)", 4), ParseError);
  CHECK_THROWS_AS(parse_word("R(boost:1,axis:0)", 4), ParseError);
  CHECK_THROWS_AS(parse_word("R(rot:1,from:2,to:2)", 4), ParseError);
  CHECK_THROWS_AS(parse_word("D(-1)", 4), DomainError);
  CHECK_THROWS_AS(parse_word("L(2,0,0,1)", 2), DomainError);
  CHECK(parse_word("L(1,0,0,1)", 2).word().size() == 1);
}
