#ifndef JETRED_CONFORMAL_MAPS_HPP
#define JETRED_CONFORMAL_MAPS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "jetred/errors.hpp"
#include "jetred/minkowski_jets.hpp"
#include "jetred/multipoly2.hpp"

namespace jetred {

struct Translation {
  Eigen::VectorXd a;
};
struct Lorentz {
  Eigen::MatrixXd L;
};
struct Dilatation {
  double lambda;
};
/// x -> (x + b x^2) / (1 + 2 b.x + b^2 x^2), dot products with eta.
struct SpecialConformal {
  Eigen::VectorXd b;
};

using Generator = std::variant<Translation, Lorentz, Dilatation, SpecialConformal>;

enum class GeneratorKind { Translation, Lorentz, Dilatation, SpecialConformal };

GeneratorKind kind_of(const Generator& g);

/// A conformal map as a word of generators, applied left to right.
class ConformalElement {
 public:
  /// Identity on R^n.
  explicit ConformalElement(int n);
  ConformalElement(int n, std::vector<Generator> word);

  int dimension() const { return n_; }
  const std::vector<Generator>& word() const { return word_; }

  /// g1 * g2 is the map x -> g1(g2(x)): the word of g2 followed by that of g1.
  friend ConformalElement operator*(const ConformalElement& g1, const ConformalElement& g2);

 private:
  int n_;
  std::vector<Generator> word_;
};

inline constexpr double kSingularThreshold = 1e-12;

namespace detail {

template <class S>
S eta_dot(const std::vector<S>& x, const std::vector<S>& y) {
  S s = -(x[0] * y[0]);
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

template <class S>
std::vector<S> apply_generator(const Generator& g, const std::vector<S>& x) {
  const std::size_t n = x.size();
  return std::visit(
      [&](const auto& gen) -> std::vector<S> {
        using G = std::decay_t<decltype(gen)>;
        std::vector<S> y = x;
        if constexpr (std::is_same_v<G, Translation>) {
          for (std::size_t i = 0; i < n; ++i) y[i] += gen.a(static_cast<Eigen::Index>(i));
        } else if constexpr (std::is_same_v<G, Lorentz>) {
          for (std::size_t i = 0; i < n; ++i) {
            y[i] = x[0] * gen.L(static_cast<Eigen::Index>(i), 0);
            for (std::size_t k = 1; k < n; ++k) y[i] += x[k] * gen.L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
          }
        } else if constexpr (std::is_same_v<G, Dilatation>) {
          for (auto& yi : y) yi *= gen.lambda;
        } else {
          std::vector<S> b(n, x[0] * 0.0);
          for (std::size_t i = 0; i < n; ++i) b[i] += gen.b(static_cast<Eigen::Index>(i));
          const S x_sq = eta_dot(x, x);
          const S den = 1.0 + 2.0 * eta_dot(b, x) + eta_dot(b, b) * x_sq;
          if (std::abs(value_of(den)) < kSingularThreshold)
            throw SingularPoint("special conformal transformation: denominator vanishes");
          const S inv = 1.0 / den;
          for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] + b[i] * x_sq) * inv;
        }
        return y;
      },
      g);
}

}  // namespace detail

/// g(x) for any scalar type closed under +, * and division (double, MultiPoly2).
template <class S>
std::vector<S> apply_point(const ConformalElement& g, std::vector<S> x) {
  if (static_cast<int>(x.size()) != g.dimension()) throw ShapeError("apply_point: dimension mismatch");
  for (const Generator& gen : g.word()) x = detail::apply_generator(gen, x);
  return x;
}

Eigen::VectorXd apply_point(const ConformalElement& g, const Eigen::VectorXd& x);

/// Order-2 Taylor data of a single generator at x.
Map2Jet<double> generator_jet(const Generator& g, const Eigen::VectorXd& x);

/// Order-2 Taylor data of g at x, composed generator by generator.
Map2Jet<double> map_jet2_at(const ConformalElement& g, const Eigen::VectorXd& x);

/// 2-jet of f o phi at x from the 2-jet of f at phi(x).
inline ScalarJet2<double> pullback_scalar_jet(const ScalarJet2<double>& j_at_y, const Map2Jet<double>& phi) {
  return diffeo_action(j_at_y, phi);
}

struct RandomElementOptions {
  int dimension = 4;
  std::optional<GeneratorKind> forced;  // every factor of this kind
  bool stabilizer_only = false;         // no translations: fixes the origin
};

/// Deterministic random word of length 1..max_word_len. Translation and
/// special conformal parameters lie in [-scale, scale] per component,
/// log(lambda) in [-scale, scale], boost rapidities in [-scale, scale],
/// rotations uniform.
ConformalElement random_element(std::uint64_t seed, int max_word_len, double scale,
                                const RandomElementOptions& options = {});

/// Random Lorentz matrix: boost_to_e0 of a random unit timelike vector,
/// times a random spatial orthogonal matrix.
Eigen::MatrixXd random_lorentz(std::uint64_t seed, int n, double max_rapidity);

/// Text form, e.g. "T(0.1,0,0,0);D(2);K(0,0.3,0,0);R(boost:0.5,axis:1)".
ConformalElement parse_word(std::string_view text, int n);
std::string format_word(const ConformalElement& g);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace jetred

#endif  // JETRED_CONFORMAL_MAPS_HPP
