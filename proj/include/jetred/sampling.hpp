#ifndef JETRED_SAMPLING_HPP
#define JETRED_SAMPLING_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "jetred/conformal_maps.hpp"
#include "jetred/jet_extraction.hpp"
#include "jetred/minkowski_jets.hpp"

namespace jetred {

/// splitmix64 finalizer of (master, index): independent per-trial seeds.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Rejects covectors with |u^2| < ratio * |u|^2 or u^2 >= 0.
inline bool well_timelike(const Eigen::VectorXd& u, double ratio = 1e-3) {
  const double u_sq = Metric(static_cast<int>(u.size())).inner(u, u);
  return u_sq < 0.0 && -u_sq >= ratio * u.squaredNorm();
}

/// Random timelike covector: u0 of either sign, |u0| in [1, 2], spatial
/// components in [-1, 1], resampled until well timelike.
inline Eigen::VectorXd random_timelike_covector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> mag(1.0, 2.0), comp(-1.0, 1.0);
  std::bernoulli_distribution flip(0.5);
  Eigen::VectorXd u(n);
  do {
    u(0) = flip(rng) ? -mag(rng) : mag(rng);
    for (int i = 1; i < n; ++i) u(i) = comp(rng);
  } while (!well_timelike(u));
  return u;
}

/// Strongly timelike covector: |u0| in [1, 2], |spatial part| <= |u0| / 2,
/// so -u^2 >= 3/4 u0^2.
inline Eigen::VectorXd random_strongly_timelike_covector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> mag(1.0, 2.0), comp(-1.0, 1.0);
  std::bernoulli_distribution flip(0.5);
  Eigen::VectorXd u(n);
  u(0) = flip(rng) ? -mag(rng) : mag(rng);
  Eigen::VectorXd s(n - 1);
  do {
    for (int i = 0; i < n - 1; ++i) s(i) = comp(rng);
  } while (s.norm() > 1.0);
  u.tail(n - 1) = 0.5 * std::abs(u(0)) * s;
  return u;
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

inline ScalarJet2<double> random_timelike_jet(std::mt19937_64& rng, int n) {
  Eigen::VectorXd u = random_timelike_covector(rng, n);
  return ScalarJet2<double>(u, random_symmetric(rng, n));
}

/// Jet whose reduced block has entries of order one.
inline ScalarJet2<double> random_well_conditioned_jet(std::mt19937_64& rng, int n) {
  Eigen::VectorXd u = random_strongly_timelike_covector(rng, n);
  return ScalarJet2<double>(u, random_symmetric(rng, n));
}

inline Eigen::VectorXd random_point(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = d(rng);
  return x;
}

/// Quadratic c + g.x + 1/2 x^T H x whose gradient at x is a random timelike covector.
inline MultivariatePolynomial random_quadratic_at(std::mt19937_64& rng, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const Eigen::MatrixXd H = random_symmetric(rng, n);
  const Eigen::VectorXd grad = random_timelike_covector(rng, n);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return MultivariatePolynomial::quadratic(d(rng), grad - H * x, H);
}

/// Up to eight monomials of total degree <= 4, coefficients in [-1, 1].
inline MultivariatePolynomial random_quartic(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> nterms(1, 8), var(0, n - 1), deg(0, 4);
  std::vector<MultivariatePolynomial::Term> terms;
  const int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) e[static_cast<std::size_t>(var(rng))] += 1;
    terms.push_back({coef(rng), e});
  }
  return MultivariatePolynomial(n, std::move(terms));
}

/// p(c + g.x + 1/2 x^T H x) with deg p in 1..4, all coefficients in [-1, 1].
inline QuadraticComposite random_composite(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> degree(1, 4);
  QuadraticComposite f;
  const int d = degree(rng);
  for (int i = 0; i <= d; ++i) f.outer.coefficients.push_back(coef(rng));
  f.c = coef(rng);
  f.g = random_point(rng, n, 1.0);
  f.H = random_symmetric(rng, n);
  return f;
}

inline TestFunction random_catalog_function(std::mt19937_64& rng, int n) {
  std::bernoulli_distribution pick(0.5);
  if (pick(rng)) return random_quartic(rng, n);
  return random_composite(rng, n);
}

}  // namespace jetred

#endif  // JETRED_SAMPLING_HPP
