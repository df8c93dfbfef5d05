#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "jetred/conformal_maps.hpp"
#include "jetred/errors.hpp"
#include "jetred/minkowski_reduction.hpp"
#include "jetred/sampling.hpp"
#include "jetred/verify.hpp"

using namespace jetred;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

Eigen::MatrixXd diag(std::initializer_list<double> v) { return vec(v).asDiagonal(); }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) G(i, j) = normal(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
}

// Literal index sums over eta and P, no matrix algebra. n = 4.
struct LiteralClosedForms {
  double D1, D2, D3;
};

LiteralClosedForms literal_closed_forms(const ScalarJet2<double>& j) {
  const int n = 4;
  const Metric metric(n);
  auto eta = [&](int a, int b) { return a == b ? metric.sign(a) : 0.0; };
  const Eigen::VectorXd up = metric.raise(j.u());
  const double gsq = metric.inner(j.u(), j.u());
  auto P = [&](int a, int b) { return up(a) * up(b) / gsq; };
  auto M = [&](int a, int b) { return j.u2()(a, b) / gsq; };

  double lap = 0.0, pm = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      lap += eta(a, b) * j.u2()(a, b);
      pm += P(a, b) * M(a, b);
    }
  const double trace_ratio = lap / gsq;

  double bracket = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          bracket += (eta(a, m) * eta(b, l) - 2.0 * eta(a, m) * P(b, l) + 2.0 * P(a, b) * P(l, m)) * M(a, b) * M(l, m);

  double c_sum = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
              const double C = eta(a, s) * eta(b, l) * eta(m, r) - 3.0 * eta(a, s) * eta(b, l) * P(m, r) +
                               3.0 * eta(a, m) * eta(b, l) * P(r, s) + 3.0 * eta(a, s) * P(b, l) * P(m, r) -
                               6.0 * eta(a, m) * P(b, l) * P(r, s) + 2.0 * P(a, b) * P(l, m) * P(r, s);
              c_sum += C * M(a, b) * M(l, m) * M(r, s);
            }
  return {trace_ratio + 2.0 * pm, bracket + 2.0 * trace_ratio * pm, c_sum + 3.0 * trace_ratio * pm * pm};
}

std::vector<double> canonical_traces(const ScalarJet2<double>& j) { return traces(canonicalize(j)); }

double worst_relative(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, relative_residual(a[k], b[k]));
  return r;
}

}  // namespace

TEST_CASE("normalize_dilatation examples") {
  const ScalarJet2<double> unit(vec({1, 0, 0, 0}), diag({0, 1, 2, 3}));
  const auto a = normalize_dilatation(unit);
  CHECK(a.u() == unit.u());
  CHECK(a.u2() == unit.u2());

  const ScalarJet2<double> twice(vec({2, 0, 0, 0}), diag({4, 8, 12, 16}));
  const auto b = normalize_dilatation(twice);
  CHECK(max_abs(b.u() - vec({1, 0, 0, 0})) < 1e-15);
  CHECK(max_abs(b.u2() - diag({1, 2, 3, 4})) < 1e-15);

  CHECK_THROWS_AS(normalize_dilatation(ScalarJet2<double>(vec({0, 1, 0, 0}), diag({0, 0, 0, 0}))), NonTimelikeGradient);
  CHECK_THROWS_AS(normalize_dilatation(ScalarJet2<double>(vec({1, 1, 0, 0}), diag({0, 0, 0, 0}))), NonTimelikeGradient);
}

TEST_CASE("boost_to_e0 examples") {
  CHECK(boost_to_e0(vec({1, 0, 0, 0})) == Eigen::MatrixXd::Identity(4, 4));

  Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(4, 4);
  expect.topLeftCorner(2, 2) << 1.25, -0.75, 0.75, -1.25;
  const Eigen::MatrixXd A = boost_to_e0(vec({1.25, 0.75, 0, 0}));
  CHECK(max_abs(A - expect) < 1e-15);
  CHECK(max_abs(A * vec({1.25, 0.75, 0, 0}) - vec({1, 0, 0, 0})) < 1e-15);

  // past-pointing with zero spatial part: time reversal
  const Eigen::MatrixXd R = boost_to_e0(vec({-1, 0, 0, 0}));
  CHECK(R == diag({-1, 1, 1, 1}));
  CHECK(is_lorentz(R));

  CHECK_THROWS_AS(boost_to_e0(vec({1, 1, 0, 0})), DomainError);
  CHECK_THROWS_AS(boost_to_e0(vec({2, 0, 0, 0})), DomainError);
}

TEST_CASE("boost_to_e0 certification on random unit timelike vectors") {
  std::mt19937_64 rng(101);
  const Metric eta(4);
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd v = random_timelike_covector(rng, 4);
    v /= std::sqrt(-eta.inner(v, v));
    const Eigen::MatrixXd A = boost_to_e0(v);
    CHECK(max_abs(A.transpose() * eta.matrix() * A - eta.matrix()) <= 1e-10);
    CHECK(max_abs(A * v - vec({1, 0, 0, 0})) <= 1e-10);
  }
}

TEST_CASE("sct_cancel examples") {
  const ScalarJet2<double> plain(vec({1, 0, 0, 0}), diag({0, 1, 2, 3}));
  CHECK(max_abs(sct_cancel(plain).u2() - plain.u2()) == 0.0);

  const auto c = sct_cancel(ScalarJet2<double>(vec({1, 0, 0, 0}), diag({2, 1, 1, 1})));
  CHECK(max_abs(c.u2() - diag({0, -1, -1, -1})) < 1e-15);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = w(1, 0) = 4.0;
  const auto d = sct_cancel(ScalarJet2<double>(vec({1, 0, 0, 0}), w));
  CHECK(max_abs(d.u2()) < 1e-15);

  CHECK_THROWS_AS(sct_cancel(ScalarJet2<double>(vec({2, 0, 0, 0}), w)), DomainError);
}

TEST_CASE("sct_cancel clears the time row on random canonical jets") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 5;
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0(0) = 1.0;
    const Eigen::MatrixXd w = random_symmetric(rng, n);
    const auto c = sct_cancel(ScalarJet2<double>(e0, w));
    CHECK(c.u2().row(0).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::MatrixXd expect = w.bottomRightCorner(n - 1, n - 1) - w(0, 0) * Eigen::MatrixXd::Identity(n - 1, n - 1);
    CHECK(max_abs(c.u2().bottomRightCorner(n - 1, n - 1) - expect) <= 1e-14);
  }
}

TEST_CASE("canonicalize examples") {
  const auto a = canonicalize(ScalarJet2<double>(vec({1, 0, 0, 0}), diag({0, 1, 2, 3})));
  CHECK(a.n == 4);
  CHECK(max_abs(a.w_tilde - diag({1, 2, 3})) < 1e-15);
  CHECK(max_abs(a.eigenvalues - vec({1, 2, 3})) < 1e-15);

  const auto b = canonicalize(ScalarJet2<double>(vec({2, 0, 0, 0}), diag({0, 4, 8, 12})));
  CHECK(max_abs(b.w_tilde - a.w_tilde) < 1e-15);
  CHECK(max_abs(b.eigenvalues - a.eigenvalues) < 1e-15);

  CHECK_THROWS_AS(canonicalize(ScalarJet2<double>(vec({0, 1, 0, 0}), diag({0, 1, 2, 3}))), NonTimelikeGradient);
}

TEST_CASE("traces examples") {
  CHECK(traces<double>(Eigen::MatrixXd::Zero(3, 3)) == std::vector<double>{0, 0, 0});
  CHECK(traces<double>(diag({1, 2, 3})) == std::vector<double>{6, 14, 36});

  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXd B = random_orthogonal(rng, 3);
    const auto s = traces<double>(Eigen::MatrixXd(B * diag({1, 2, 3}) * B.transpose()));
    CHECK(worst_relative(s, {6, 14, 36}) <= 1e-10);
  }
}

TEST_CASE("eigen_spatial examples and reconstruction") {
  CHECK(max_abs(eigen_spatial(diag({3, 1, 2})).values - vec({1, 2, 3})) == 0.0);
  Eigen::MatrixXd swap = Eigen::MatrixXd::Zero(3, 3);
  swap(0, 1) = swap(1, 0) = 1.0;
  CHECK(max_abs(eigen_spatial(swap).values - vec({-1, 0, 1})) < 1e-15);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(3, 3);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(eigen_spatial(asym), DomainError);

  std::mt19937_64 rng(43);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 6;
    const Eigen::MatrixXd w = random_symmetric(rng, m, 3.0);
    const SpatialEigen e = eigen_spatial(w);
    CHECK(max_abs(e.frame * e.values.asDiagonal() * e.frame.transpose() - w) <= 1e-10);
    CHECK(max_abs(e.frame.transpose() * e.frame - Eigen::MatrixXd::Identity(m, m)) <= 1e-12);
    for (int i = 1; i < m; ++i) CHECK(e.values(i - 1) <= e.values(i));
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(w).eigenvalues();
    CHECK(max_abs(e.values - ref) <= 1e-12 * std::max(1.0, max_abs(w)));
  }
}

TEST_CASE("elementary symmetric functions") {
  CHECK(elementary_from_traces({0, 0, 0}) == std::vector<double>{0, 0, 0});
  CHECK(elementary_from_traces({6, 14, 36}) == std::vector<double>{6, 11, 6});
  CHECK(elementary_from_roots(vec({1, 2, 3})) == std::vector<double>{6, 11, 6});

  std::mt19937_64 rng(47);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 6;
    const Eigen::MatrixXd w = random_symmetric(rng, m, 2.0);
    const auto from_traces = elementary_from_traces(traces<double>(w));
    const auto from_roots = elementary_from_roots(eigen_spatial(w).values);
    CHECK(worst_relative(from_roots, from_traces) <= 1e-9);
  }
}

TEST_CASE("closed forms on the canonical example") {
  const ScalarJet2<double> j(vec({1, 0, 0, 0}), diag({0, 1, 2, 3}));
  CHECK(D1_closed(j) == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK(D2_closed(j) == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(D3_closed(j) == doctest::Approx(-36.0).epsilon(1e-15));
  CHECK(Dn_closed(j) == D1_closed(j));

  const ScalarJet2<double> two(vec({1, 0}), diag({5, 7}));
  CHECK(Dn_closed(two) == doctest::Approx(-2.0));  // grad^2 f = -5 + 7, (grad f)^2 = -1
  CHECK_THROWS_AS(D1_closed(two), ShapeError);
  CHECK_THROWS_AS(D1_closed(ScalarJet2<double>(vec({1, 1, 0, 0}), diag({0, 1, 2, 3}))), DomainError);
}

TEST_CASE("closed forms match literal index sums") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 100; ++t) {
    const auto j = random_timelike_jet(rng, 4);
    const auto lit = literal_closed_forms(j);
    CHECK(relative_residual(lit.D1, D1_closed(j)) <= 1e-12);
    CHECK(relative_residual(lit.D2, D2_closed(j)) <= 1e-12);
    CHECK(relative_residual(lit.D3, D3_closed(j)) <= 1e-12);
  }
}

TEST_CASE("sign relation between traces and closed forms on the canonical family") {
  // (e0, diag(0, l1, l2, l3)) is canonical at every stage: S_k = sum l^k and
  // each closed form evaluates to (-1)^k S_k.
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int t = 0; t < 100; ++t) {
    const double l1 = d(rng), l2 = d(rng), l3 = d(rng);
    const ScalarJet2<double> j(vec({1, 0, 0, 0}), diag({0, l1, l2, l3}));
    const auto S = canonical_traces(j);
    CHECK(relative_residual(S[0], -D1_closed(j)) <= 1e-14);
    CHECK(relative_residual(S[1], D2_closed(j)) <= 1e-14);
    CHECK(relative_residual(S[2], -D3_closed(j)) <= 1e-14);
  }
}

TEST_CASE("invariant report consistency on random jets") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + t % 5;
    const auto r = invariant_report(random_timelike_jet(rng, n));
    CHECK(r.newton_residual <= 1e-9);
    for (double res : r.closed_form_residuals) CHECK(res <= 1e-8);
    CHECK(static_cast<int>(r.S.size()) == n - 1);
  }
}

TEST_CASE("first-order quotient is a point") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 5;
    const Eigen::VectorXd u = random_timelike_covector(rng, n);
    const auto c = canonicalize(ScalarJet2<double>(u, Eigen::MatrixXd::Zero(n, n)));
    CHECK(max_abs(c.w_tilde) == 0.0);
  }
}

TEST_CASE("stabilizer invariance of traces") {
  std::mt19937_64 rng(71);
  RandomElementOptions opts;
  opts.stabilizer_only = true;
  for (int t = 0; t < 1000; ++t) {
    const auto j = random_timelike_jet(rng, 4);
    const ConformalElement h = random_element(rng(), 4, 0.5, opts);
    const auto moved = diffeo_action(j, map_jet2_at(h, Eigen::VectorXd::Zero(4)));
    if (!well_timelike(moved.u(), 1e-6)) continue;
    CHECK(worst_relative(canonical_traces(j), canonical_traces(moved)) <= 1e-6);
  }
}

TEST_CASE("traces are invariant under spatial orthogonal conjugation") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXd w = random_symmetric(rng, 3, 2.0);
    const Eigen::MatrixXd B = random_orthogonal(rng, 3);
    CHECK(worst_relative(traces<double>(w), traces<double>(Eigen::MatrixXd(B * w * B.transpose()))) <= 1e-10);
  }
}

TEST_CASE("trace invariants are functionally independent") {
  std::mt19937_64 rng(79);
  for (int n : {4, 6}) {
    for (int t = 0; t < 50; ++t) {
      const auto j = random_well_conditioned_jet(rng, n);
      CHECK(numerical_rank(trace_jacobian(j)) == n - 1);
    }
  }
}
