#ifndef JETRED_VERIFY_HPP
#define JETRED_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "jetred/minkowski_jets.hpp"

namespace jetred {

struct SuiteOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  // Overrides the tolerance of the invariance checks; other checks keep
  // their pinned tolerances.
  std::optional<double> tolerance;
  int dimension = 4;  // Minkowski suite only
};

struct TrialFailure {
  int trial = 0;
  std::uint64_t trial_seed = 0;
  nlohmann::json inputs;
  double residual = 0.0;
};

struct CheckReport {
  std::string name;
  double tolerance = 0.0;
  int trials = 0;
  int resamples = 0;  // ill-conditioned draws replaced within a trial
  double max_residual = 0.0;
  std::vector<TrialFailure> failures;

  bool pass() const { return failures.empty(); }
};

struct VerificationReport {
  std::string suite;
  std::uint64_t master_seed = 0;
  int trials = 0;
  std::optional<int> dimension;
  std::vector<CheckReport> checks;

  bool pass() const;
  double max_residual() const;
};

/// D1/D2 invariance under random Moebius maps, Schwarzian vanishing,
/// canonical representative, rank of (w3..w6).
VerificationReport run_mobius_suite(const SuiteOptions& options);

/// Stabilizer and full-group invariance of the trace invariants and closed
/// forms, closed-form consistency, Newton identities, chain rule, boost
/// certification and rank, in dimension options.dimension.
VerificationReport run_minkowski_suite(const SuiteOptions& options);

nlohmann::json to_json(const VerificationReport& r);

/// Number of singular values above rel_threshold * sigma_max.
int numerical_rank(const Eigen::MatrixXd& J, double rel_threshold = 1e-8);

/// Jacobian of (S_1..S_{n-1}) with respect to the n + n(n+1)/2 independent
/// jet coordinates (u_a, then u_ab for a <= b), by forward-mode AD.
Eigen::MatrixXd trace_jacobian(const ScalarJet2<double>& j);

/// Jacobian of (w3..wk) with respect to (u1..uk) at u, from exact symbolic
/// derivatives.
Eigen::MatrixXd mobius_invariant_jacobian(const std::vector<double>& u);

}  // namespace jetred

#endif  // JETRED_VERIFY_HPP
