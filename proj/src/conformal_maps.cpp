#include "jetred/conformal_maps.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "jetred/minkowski_reduction.hpp"

namespace jetred {

GeneratorKind kind_of(const Generator& g) { return static_cast<GeneratorKind>(g.index()); }

namespace {

void validate_generator(const Generator& g, int n) {
  std::visit(
      [n](const auto& gen) {
        using G = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<G, Translation>) {
          if (gen.a.size() != n) throw ShapeError("Translation: dimension mismatch");
          if (!gen.a.allFinite()) throw DomainError("Translation: non-finite parameter");
        } else if constexpr (std::is_same_v<G, Lorentz>) {
          if (gen.L.rows() != n || gen.L.cols() != n) throw ShapeError("Lorentz: dimension mismatch");
          if (!gen.L.allFinite() || !is_lorentz(gen.L)) throw DomainError("Lorentz: matrix does not preserve eta");
        } else if constexpr (std::is_same_v<G, Dilatation>) {
          if (!(gen.lambda > 0.0) || !std::isfinite(gen.lambda))
            throw DomainError("Dilatation: lambda must be positive");
        } else {
          if (gen.b.size() != n) throw ShapeError("SpecialConformal: dimension mismatch");
          if (!gen.b.allFinite()) throw DomainError("SpecialConformal: non-finite parameter");
        }
      },
      g);
}

std::vector<double> to_std(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace

ConformalElement::ConformalElement(int n) : n_(n) {
  if (n < 2) throw ShapeError("ConformalElement: dimension must be >= 2");
}

ConformalElement::ConformalElement(int n, std::vector<Generator> word) : ConformalElement(n) {
  for (const Generator& g : word) validate_generator(g, n);
  word_ = std::move(word);
}

ConformalElement operator*(const ConformalElement& g1, const ConformalElement& g2) {
  if (g1.n_ != g2.n_) throw ShapeError("ConformalElement: dimension mismatch");
  ConformalElement r(g2);
  r.word_.insert(r.word_.end(), g1.word_.begin(), g1.word_.end());
  return r;
}

Eigen::VectorXd apply_point(const ConformalElement& g, const Eigen::VectorXd& x) {
  const std::vector<double> y = apply_point(g, to_std(x));
  return Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
}

Map2Jet<double> generator_jet(const Generator& g, const Eigen::VectorXd& x) {
  const auto n = x.size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const std::vector<Eigen::MatrixXd> flat(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  switch (kind_of(g)) {
    case GeneratorKind::Translation:
      return {x + std::get<Translation>(g).a, I, flat};
    case GeneratorKind::Lorentz: {
      const Eigen::MatrixXd& L = std::get<Lorentz>(g).L;
      return {L * x, L, flat};
    }
    case GeneratorKind::Dilatation: {
      const double l = std::get<Dilatation>(g).lambda;
      return {l * x, l * I, flat};
    }
    case GeneratorKind::SpecialConformal: {
      std::vector<MultiPoly2> vars;
      for (Eigen::Index i = 0; i < n; ++i) vars.push_back(MultiPoly2::variable(static_cast<int>(n), static_cast<int>(i), x(i)));
      const std::vector<MultiPoly2> y = detail::apply_generator(g, vars);
      Map2Jet<double> jet{Eigen::VectorXd(n), Eigen::MatrixXd(n, n), {}};
      for (Eigen::Index mu = 0; mu < n; ++mu) {
        jet.value(mu) = y[mu].value();
        jet.A.row(mu) = y[mu].grad().transpose();
        jet.A2.push_back(y[mu].hess());
      }
      return jet;
    }
  }
  throw ShapeError("generator_jet: unknown generator");
}

Map2Jet<double> map_jet2_at(const ConformalElement& g, const Eigen::VectorXd& x) {
  if (x.size() != g.dimension()) throw ShapeError("map_jet2_at: dimension mismatch");
  Map2Jet<double> jet = Map2Jet<double>::identity(x);
  for (const Generator& gen : g.word()) jet = compose_jets(generator_jet(gen, jet.value), jet);
  return jet;
}

Eigen::MatrixXd random_lorentz(std::uint64_t seed, int n, double max_rapidity) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> rapidity(-max_rapidity, max_rapidity);

  Eigen::VectorXd dir(n - 1);
  do {
    for (int i = 0; i < n - 1; ++i) dir(i) = normal(rng);
  } while (dir.norm() < 1e-3);
  dir.normalize();
  const double zeta = rapidity(rng);
  Eigen::VectorXd v(n);
  v(0) = std::cosh(zeta);
  v.tail(n - 1) = std::sinh(zeta) * dir;

  Eigen::MatrixXd G(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) G(i, j) = normal(rng);
  const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n);
  R.block(1, 1, n - 1, n - 1) = Q;
  return boost_to_e0(v) * R;
}

ConformalElement random_element(std::uint64_t seed, int max_word_len, double scale, const RandomElementOptions& options) {
  if (max_word_len < 1) throw ShapeError("random_element: max_word_len must be >= 1");
  const int n = options.dimension;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, max_word_len);
  std::uniform_real_distribution<double> param(-scale, scale);

  std::vector<GeneratorKind> kinds;
  if (options.forced) {
    kinds = {*options.forced};
  } else {
    if (!options.stabilizer_only) kinds.push_back(GeneratorKind::Translation);
    kinds.insert(kinds.end(), {GeneratorKind::Lorentz, GeneratorKind::Dilatation, GeneratorKind::SpecialConformal});
  }
  std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);

  auto random_vector = [&] {
    Eigen::VectorXd a(n);
    for (int i = 0; i < n; ++i) a(i) = param(rng);
    return a;
  };

  std::vector<Generator> word;
  const int len = length(rng);
  for (int i = 0; i < len; ++i) {
    switch (kinds[pick(rng)]) {
      case GeneratorKind::Translation:
        word.emplace_back(Translation{random_vector()});
        break;
      case GeneratorKind::Lorentz:
        word.emplace_back(Lorentz{random_lorentz(rng(), n, scale)});
        break;
      case GeneratorKind::Dilatation:
        word.emplace_back(Dilatation{std::exp(param(rng))});
        break;
      case GeneratorKind::SpecialConformal:
        word.emplace_back(SpecialConformal{random_vector()});
        break;
    }
  }
  return ConformalElement(n, std::move(word));
}

// ---- text form ------------------------------------------------------------

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

double parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x))
    throw ParseError("word: bad number '" + std::string(s) + "'");
  return x;
}

int parse_index(std::string_view s, int lo, int hi) {
  const double x = parse_number(s);
  if (x != std::floor(x) || x < lo || x > hi) throw ParseError("word: index '" + std::string(s) + "' out of range");
  return static_cast<int>(x);
}

Eigen::VectorXd parse_vector(const std::vector<std::string_view>& args, int n, char what) {
  if (static_cast<int>(args.size()) != n)
    throw ParseError(std::string("word: ") + what + " expects " + std::to_string(n) + " components");
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = parse_number(args[static_cast<std::size_t>(i)]);
  return v;
}

// R(boost:z,axis:i) or R(rot:t,from:i,to:j) as a Lorentz matrix.
Eigen::MatrixXd parse_rotation(const std::vector<std::string_view>& args, int n) {
  std::vector<std::pair<std::string_view, std::string_view>> kv;
  for (std::string_view a : args) {
    const auto colon = a.find(':');
    if (colon == std::string_view::npos) throw ParseError("word: R expects key:value arguments");
    kv.emplace_back(trim(a.substr(0, colon)), trim(a.substr(colon + 1)));
  }
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  if (kv.size() == 2 && kv[0].first == "boost" && kv[1].first == "axis") {
    const double z = parse_number(kv[0].second);
    const int i = parse_index(kv[1].second, 1, n - 1);
    L(0, 0) = L(i, i) = std::cosh(z);
    L(0, i) = L(i, 0) = std::sinh(z);
    return L;
  }
  if (kv.size() == 3 && kv[0].first == "rot" && kv[1].first == "from" && kv[2].first == "to") {
    const double t = parse_number(kv[0].second);
    const int i = parse_index(kv[1].second, 1, n - 1);
    const int j = parse_index(kv[2].second, 1, n - 1);
    if (i == j) throw ParseError("word: rotation plane needs two distinct axes");
    L(i, i) = L(j, j) = std::cos(t);
    L(i, j) = -std::sin(t);
    L(j, i) = std::sin(t);
    return L;
  }
  throw ParseError("word: R expects (boost:z,axis:i) or (rot:t,from:i,to:j)");
}

}  // namespace

ConformalElement parse_word(std::string_view text, int n) {
  if (n < 2) throw ShapeError("parse_word: dimension must be >= 2");
  std::vector<Generator> word;
  text = trim(text);
  if (text.empty()) return ConformalElement(n);
  for (std::string_view tok : split(text, ';')) {
    if (tok.size() < 3 || tok[1] != '(' || tok.back() != ')') throw ParseError("word: malformed generator '" + std::string(tok) + "'");
    const auto args = split(tok.substr(2, tok.size() - 3), ',');
    switch (tok[0]) {
      case 'T':
        word.emplace_back(Translation{parse_vector(args, n, 'T')});
        break;
      case 'K':
        word.emplace_back(SpecialConformal{parse_vector(args, n, 'K')});
        break;
      case 'D': {
        if (args.size() != 1) throw ParseError("word: D expects one argument");
        const double l = parse_number(args[0]);
        if (!(l > 0.0)) throw DomainError("Dilatation: lambda must be positive");
        word.emplace_back(Dilatation{l});
        break;
      }
      case 'L': {
        const Eigen::VectorXd flat = parse_vector(args, n * n, 'L');
        Eigen::MatrixXd L(n, n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) L(r, c) = flat(r * n + c);
        word.emplace_back(Lorentz{L});
        break;
      }
      case 'R':
        word.emplace_back(Lorentz{parse_rotation(args, n)});
        break;
      default:
        throw ParseError("word: unknown generator '" + std::string(1, tok[0]) + "'");
    }
  }
  return ConformalElement(n, std::move(word));
}

std::string format_word(const ConformalElement& g) {
  std::ostringstream out;
  auto list = [&](const double* p, Eigen::Index count) {
    for (Eigen::Index i = 0; i < count; ++i) out << (i ? "," : "") << format_double(p[i]);
  };
  bool first = true;
  for (const Generator& gen : g.word()) {
    if (!first) out << ';';
    first = false;
    switch (kind_of(gen)) {
      case GeneratorKind::Translation:
        out << "T(";
        list(std::get<Translation>(gen).a.data(), g.dimension());
        break;
      case GeneratorKind::Lorentz: {
        const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> L = std::get<Lorentz>(gen).L;
        out << "L(";
        list(L.data(), L.size());
        break;
      }
      case GeneratorKind::Dilatation:
        out << "D(" << format_double(std::get<Dilatation>(gen).lambda);
        break;
      case GeneratorKind::SpecialConformal:
        out << "K(";
        list(std::get<SpecialConformal>(gen).b.data(), g.dimension());
        break;
    }
    out << ')';
  }
  return out.str();
}

}  // namespace jetred
