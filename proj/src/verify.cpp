#include "jetred/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <unsupported/Eigen/AutoDiff>

#include "jetred/conformal_maps.hpp"
#include "jetred/errors.hpp"
#include "jetred/jet_extraction.hpp"
#include "jetred/jet_io.hpp"
#include "jetred/minkowski_reduction.hpp"
#include "jetred/mobius.hpp"
#include "jetred/sampling.hpp"

namespace jetred {

using nlohmann::json;

namespace {

// One trial outcome; nullopt from a draw asks for a resample.
struct Outcome {
  double residual;
  json inputs;
};

using Trial = std::function<std::optional<Outcome>(std::mt19937_64&)>;

constexpr int kMaxResamples = 1000;

CheckReport run_check(const std::string& name, double tolerance, int trials, std::uint64_t master, std::uint64_t check_id,
                      const Trial& trial) {
  CheckReport report;
  report.name = name;
  report.tolerance = tolerance;
  report.trials = trials;
  const std::uint64_t check_seed = trial_seed(master, check_id);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = trial_seed(check_seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 rng(seed);
    std::optional<Outcome> out;
    int attempts = 0;
    while (!out && attempts < kMaxResamples) {
      out = trial(rng);
      if (!out) ++attempts;
    }
    report.resamples += attempts;
    if (!out) {
      report.failures.push_back({i, seed, json{{"error", "no well-conditioned draw"}},
                                 std::numeric_limits<double>::infinity()});
      report.max_residual = std::numeric_limits<double>::infinity();
      continue;
    }
    report.max_residual = std::max(report.max_residual, out->residual);
    if (!(out->residual <= tolerance)) report.failures.push_back({i, seed, std::move(out->inputs), out->residual});
  }
  return report;
}

double worst_relative(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, relative_residual(a[k], b[k]));
  return r;
}

double jet_relative_distance(const ScalarJet2<double>& a, const ScalarJet2<double>& b) {
  const double scale = std::max({1.0, a.u().cwiseAbs().maxCoeff(), a.u2().cwiseAbs().maxCoeff()});
  return std::max((a.u() - b.u()).cwiseAbs().maxCoeff(), (a.u2() - b.u2()).cwiseAbs().maxCoeff()) / scale;
}

json jet_json(const ScalarJet2<double>& j) { return {{"u", vector_json(j.u())}, {"u2", matrix_json(j.u2())}}; }

// Trace invariants followed by the closed forms (D1..D3 for n = 4, D otherwise).
std::vector<double> invariant_vector(const ScalarJet2<double>& j) {
  std::vector<double> v = traces(canonicalize(j));
  if (j.dimension() == 4) {
    v.push_back(D1_closed(j));
    v.push_back(D2_closed(j));
    v.push_back(D3_closed(j));
  } else {
    v.push_back(Dn_closed(j));
  }
  return v;
}

// ---- Moebius draws ------------------------------------------------------

std::vector<double> draw_univariate_jet(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> u(static_cast<std::size_t>(k));
  for (double& x : u) x = d(rng);
  return u;
}

// a, b, c, d in [-1, 1] with |ad - bc| >= 1/5.
std::optional<MobiusElement<double>> draw_mobius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
  if (std::abs(a * e - b * c) < 0.2) return std::nullopt;
  return MobiusElement<double>(a, b, c, e);
}

json mobius_json(const MobiusElement<double>& g) { return {g.a, g.b, g.c, g.d}; }

const InvariantSymbolFamily& family6() {
  static const InvariantSymbolFamily family = symbolic_invariants(6);
  return family;
}

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.pass(); });
}

double VerificationReport::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks)
    if (c.tolerance > 0.0) r = std::max(r, c.max_residual);
  return r;
}

int numerical_rank(const Eigen::MatrixXd& J, double rel_threshold) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(J).singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_threshold * sv(0)) ++rank;
  return rank;
}

Eigen::MatrixXd trace_jacobian(const ScalarJet2<double>& j) {
  using AD = Eigen::AutoDiffScalar<Eigen::VectorXd>;
  const int n = j.dimension();
  const int vars = n + n * (n + 1) / 2;
  VectorX<AD> u(n);
  MatrixX<AD> u2(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) u(i) = AD(j.u()(i), vars, k++);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) u2(a, b) = u2(b, a) = AD(j.u2()(a, b), vars, k++);
  const std::vector<AD> S = traces<AD>(reduced_spatial_block(ScalarJet2<AD>(u, u2)));
  Eigen::MatrixXd J(n - 1, vars);
  for (int r = 0; r < n - 1; ++r) J.row(r) = S[static_cast<std::size_t>(r)].derivatives().transpose();
  return J;
}

Eigen::MatrixXd mobius_invariant_jacobian(const std::vector<double>& u) {
  const InvariantSymbolFamily family = u.size() == 6 ? family6() : symbolic_invariants(static_cast<int>(u.size()));
  const auto k = static_cast<Eigen::Index>(u.size());
  Eigen::MatrixXd J(k - 2, k);
  for (Eigen::Index r = 0; r < k - 2; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      J(r, c) = family.symbols[static_cast<std::size_t>(r)].derivative(static_cast<std::size_t>(c)).evaluate(u);
  return J;
}

VerificationReport run_mobius_suite(const SuiteOptions& o) {
  if (o.trials < 1) throw ShapeError("verify: trials must be >= 1");
  VerificationReport report{"mobius", o.seed, o.trials, std::nullopt, {}};

  // D1 and D2 of f o t_g at z0 against those of f at t_g(z0).
  report.checks.push_back(run_check("invariance", o.tolerance.value_or(1e-9), o.trials, o.seed, 1, [](auto& rng) -> std::optional<Outcome> {
    const std::vector<double> u = draw_univariate_jet(rng, 4);
    if (std::abs(u[0]) < 0.2) return std::nullopt;
    const auto g = draw_mobius(rng);
    if (!g) return std::nullopt;
    const double z0 = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    if (std::abs(g->c * z0 + g->d) < 0.2) return std::nullopt;
    const UnivariateJet<double> f(u);
    const UnivariateJet<double> pulled = chain_jet(f, *g, z0);
    const double r = std::max(relative_residual(eval_D1(f), eval_D1(pulled)), relative_residual(eval_D2(f), eval_D2(pulled)));
    return Outcome{r, {{"jet", u}, {"g", mobius_json(*g)}, {"z0", z0}}};
  }));

  // The jet of a Moebius map has vanishing D1.
  report.checks.push_back(run_check("schwarzian", 1e-12, o.trials, o.seed, 2, [](auto& rng) -> std::optional<Outcome> {
    const auto g = draw_mobius(rng);
    if (!g) return std::nullopt;
    const double z0 = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    if (std::abs(g->c * z0 + g->d) < 0.2) return std::nullopt;
    const auto jet = UnivariateJet<double>::from_series(mobius_jet_at(*g, z0, 3).tail);
    return Outcome{std::abs(eval_D1(jet)), {{"g", mobius_json(*g)}, {"z0", z0}}};
  }));

  // Canonical representative: u1 = 1, u2 = 0, and its tail equals the projection.
  report.checks.push_back(run_check("representative", 1e-12, o.trials, o.seed, 3, [](auto& rng) -> std::optional<Outcome> {
    const std::vector<double> u = draw_univariate_jet(rng, 6);
    if (std::abs(u[0]) < 0.2) return std::nullopt;
    const UnivariateJet<double> f(u);
    const auto rep = canonical_representative(f);
    const auto w = canonical_projection(f);
    double r = std::max(std::abs(rep[1] - 1.0), std::abs(rep[2]));
    for (int l = 3; l <= 6; ++l) r = std::max(r, relative_residual(rep[l], w[static_cast<std::size_t>(l - 3)]));
    return Outcome{r, {{"jet", u}}};
  }));

  // (w3..w6) has rank 4 as a function of (u1..u6).
  report.checks.push_back(run_check("rank", 0.0, std::min(o.trials, 50), o.seed, 4, [](auto& rng) -> std::optional<Outcome> {
    std::vector<double> u = draw_univariate_jet(rng, 6);
    if (std::abs(u[0]) < 0.5) return std::nullopt;
    const int rank = numerical_rank(mobius_invariant_jacobian(u));
    return Outcome{std::abs(rank - 4.0), {{"jet", u}, {"rank", rank}}};
  }));
  return report;
}

VerificationReport run_minkowski_suite(const SuiteOptions& o) {
  if (o.trials < 1) throw ShapeError("verify: trials must be >= 1");
  const int n = o.dimension;
  if (n < 2) throw ShapeError("verify: dimension must be >= 2");
  VerificationReport report{"minkowski", o.seed, o.trials, n, {}};
  const double inv_tol = o.tolerance.value_or(1e-6);
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(n);

  // Stabilizer words at the origin leave the trace invariants fixed.
  report.checks.push_back(run_check("stabilizer_invariance", inv_tol, o.trials, o.seed, 11, [&](auto& rng) -> std::optional<Outcome> {
    const auto j = random_timelike_jet(rng, n);
    RandomElementOptions opts;
    opts.dimension = n;
    opts.stabilizer_only = true;
    const ConformalElement h = random_element(rng(), 4, 0.5, opts);
    const auto moved = diffeo_action(j, map_jet2_at(h, origin));
    if (!well_timelike(moved.u())) return std::nullopt;
    return Outcome{worst_relative(invariant_vector(j), invariant_vector(moved)),
                   {{"jet", jet_json(j)}, {"word", format_word(h)}}};
  }));

  // Jets of f o t_g at x against jets of f at t_g(x), f quadratic.
  report.checks.push_back(run_check("full_group_invariance", inv_tol, o.trials, o.seed, 12, [&](auto& rng) -> std::optional<Outcome> {
    RandomElementOptions opts;
    opts.dimension = n;
    const ConformalElement g = random_element(rng(), 4, 0.5, opts);
    const Eigen::VectorXd x = random_point(rng, n, 0.5);
    Eigen::VectorXd y;
    try {
      y = apply_point(g, x);
    } catch (const SingularPoint&) {
      return std::nullopt;
    }
    const TestFunction f = random_quadratic_at(rng, y);
    const auto at_y = jet2_of(f, y);
    std::optional<ScalarJet2<double>> at_x;
    try {
      at_x = jet2_of_composed(f, g, x);
    } catch (const SingularPoint&) {
      return std::nullopt;
    }
    if (!well_timelike(at_x->u())) return std::nullopt;
    return Outcome{worst_relative(invariant_vector(at_y), invariant_vector(*at_x)),
                   {{"function", to_json(f)}, {"word", format_word(g)}, {"x", vector_json(x)}}};
  }));

  // S_k = (-1)^k D_k (n = 4) or S_1 = -D (other n).
  report.checks.push_back(run_check("closed_form_consistency", 1e-8, o.trials, o.seed, 13, [&](auto& rng) -> std::optional<Outcome> {
    const auto j = random_timelike_jet(rng, n);
    const InvariantReport r = invariant_report(j);
    return Outcome{*std::max_element(r.closed_form_residuals.begin(), r.closed_form_residuals.end()),
                   {{"jet", jet_json(j)}}};
  }));

  report.checks.push_back(run_check("newton_identities", 1e-9, o.trials, o.seed, 14, [&](auto& rng) -> std::optional<Outcome> {
    const auto j = random_timelike_jet(rng, n);
    return Outcome{invariant_report(j).newton_residual, {{"jet", jet_json(j)}}};
  }));

  // Forward-mode jet of f o t_g against the pullback of the closed-form jet.
  report.checks.push_back(run_check("chain_rule", 1e-8, o.trials, o.seed, 15, [&](auto& rng) -> std::optional<Outcome> {
    RandomElementOptions opts;
    opts.dimension = n;
    const ConformalElement g = random_element(rng(), 4, 0.5, opts);
    const Eigen::VectorXd x = random_point(rng, n, 0.5);
    const TestFunction f = random_catalog_function(rng, n);
    try {
      const auto direct = jet2_of_composed(f, g, x);
      const auto phi = map_jet2_at(g, x);
      const auto pulled = pullback_scalar_jet(jet2_of(f, phi.value), phi);
      return Outcome{jet_relative_distance(direct, pulled),
                     {{"function", to_json(f)}, {"word", format_word(g)}, {"x", vector_json(x)}}};
    } catch (const SingularPoint&) {
      return std::nullopt;
    }
  }));

  // A^T eta A = eta and A v = e0; every tenth trial uses v = (+-1, 0, ..., 0).
  int boost_trial = 0;
  report.checks.push_back(run_check("boost_certification", 1e-10, o.trials, o.seed, 16, [&](auto& rng) -> std::optional<Outcome> {
    const Metric eta(n);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    if (boost_trial++ % 10 == 0) {
      v(0) = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    } else {
      v = random_timelike_covector(rng, n);
      v /= std::sqrt(-eta.inner(v, v));
    }
    const Eigen::MatrixXd A = boost_to_e0(v);
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0(0) = 1.0;
    const double r = std::max((A.transpose() * eta.matrix() * A - eta.matrix()).cwiseAbs().maxCoeff(),
                              (A * v - e0).cwiseAbs().maxCoeff());
    return Outcome{r, {{"v", vector_json(v)}}};
  }));

  // (S_1..S_{n-1}) has rank n - 1 in the jet coordinates.
  report.checks.push_back(run_check("rank", 0.0, std::min(o.trials, 50), o.seed, 17, [&](auto& rng) -> std::optional<Outcome> {
    const auto j = random_well_conditioned_jet(rng, n);
    const int rank = numerical_rank(trace_jacobian(j));
    return Outcome{std::abs(rank - (n - 1.0)), {{"jet", jet_json(j)}, {"rank", rank}}};
  }));
  return report;
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json failures = json::array();
    for (const auto& f : c.failures)
      failures.push_back({{"trial", f.trial}, {"trial_seed", f.trial_seed}, {"inputs", f.inputs}, {"residual", f.residual}});
    checks.push_back({{"name", c.name},
                      {"tolerance", c.tolerance},
                      {"trials", c.trials},
                      {"resamples", c.resamples},
                      {"max_residual", c.max_residual},
                      {"failures", failures},
                      {"pass", c.pass()}});
  }
  json j = {{"suite", r.suite}, {"master_seed", r.master_seed}, {"trials", r.trials}};
  if (r.dimension) j["dimension"] = *r.dimension;
  j["checks"] = checks;
  j["max_residual"] = r.max_residual();
  j["pass"] = r.pass();
  return j;
}

}  // namespace jetred
