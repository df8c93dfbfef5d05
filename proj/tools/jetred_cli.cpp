// jetred: command-line front end.
//
// Exit codes: 0 success, 1 domain error, 2 verification failure,
// 3 usage or parse error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetred/conformal_maps.hpp"
#include "jetred/errors.hpp"
#include "jetred/jet_extraction.hpp"
#include "jetred/jet_io.hpp"
#include "jetred/minkowski_reduction.hpp"
#include "jetred/mobius.hpp"
#include "jetred/rational.hpp"
#include "jetred/verify.hpp"

using namespace jetred;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitVerification = 2;
constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("JETRED_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError("JETRED_SEED must be a non-negative integer");
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

json symbolic_json(const InvariantSymbolFamily& family) {
  json invariants = json::array();
  for (std::size_t i = 0; i < family.symbols.size(); ++i) {
    json terms = json::array();
    for (const auto& [exps, coeff] : family.symbols[i].terms())
      terms.push_back({{"coefficient", coeff.str()}, {"exponents", exps}});
    invariants.push_back({{"name", family.name(i)}, {"expression", family.symbols[i].str()}, {"terms", terms}});
  }
  return {{"order", family.order}, {"variables", family.variables->names}, {"invariants", invariants}};
}

// Jet from --jet FILE, or from --function FILE evaluated at --point.
struct JetSource {
  std::string jet_path, function_path, point;

  ScalarJet2<double> load(std::optional<std::string>* label) const {
    if (!jet_path.empty() == !function_path.empty()) throw UsageError("give exactly one of --jet or --function");
    if (!jet_path.empty()) {
      if (!point.empty()) throw UsageError("--point only applies with --function");
      const JetFile f = load_jet_file(jet_path);
      *label = f.label;
      return f.jet();
    }
    if (point.empty()) throw UsageError("--function needs --point");
    const TestFunction f = load_test_function(function_path);
    const Eigen::VectorXd x = parse_number_list(point);
    if (x.size() != dimension_of(f)) throw ParseError("--point: dimension does not match the function");
    return jet2_of(f, x);
  }

  void add_options(CLI::App* cmd) {
    cmd->add_option("--jet", jet_path, "JSON jet file {n, u, u2, label?}")->check(CLI::ExistingFile);
    cmd->add_option("--function", function_path, "JSON test-function file")->check(CLI::ExistingFile);
    cmd->add_option("--point", point, "base point for --function, comma-separated");
  }
};

struct VerifyFlags {
  std::string suite = "all";
  int trials = 100;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int dim = 4;

  void add_options(CLI::App* cmd, bool with_suite, bool with_dim) {
    if (with_suite)
      cmd->add_option("--suite", suite, "mobius | minkowski | all")->check(CLI::IsMember({"mobius", "minkowski", "all"}));
    cmd->add_option("--trials", trials, "trials per check (>= 1)")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "master seed (default: $JETRED_SEED or 0)");
    cmd->add_option("--tol", tol, "tolerance for the invariance checks")->check(CLI::PositiveNumber);
    if (with_dim) cmd->add_option("--dim", dim, "Minkowski dimension")->check(CLI::Range(2, 12));
  }

  int run() const {
    if (trials < 1) throw UsageError("--trials must be >= 1");
    SuiteOptions o;
    o.trials = trials;
    o.seed = seed ? *seed : default_seed();
    o.tolerance = tol;
    o.dimension = dim;
    std::vector<VerificationReport> reports;
    if (suite == "mobius" || suite == "all") reports.push_back(run_mobius_suite(o));
    if (suite == "minkowski" || suite == "all") reports.push_back(run_minkowski_suite(o));
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass();
    if (reports.size() == 1) {
      print_json(to_json(reports[0]));
    } else {
      json all = json::array();
      for (const auto& r : reports) all.push_back(to_json(r));
      print_json({{"suite", "all"}, {"reports", all}, {"pass", pass}});
    }
    return pass ? 0 : kExitVerification;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential invariants of Moebius and conformal Minkowski actions on jets"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  int order = 0;
  std::string format = "text";
  auto* sym = app.add_subcommand("mobius-symbolic", "print the invariants w3..wK as Laurent polynomials");
  sym->add_option("--order", order, "jet order K")->required();
  sym->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string jet_list;
  std::string project_format = "text";
  auto* proj = app.add_subcommand("mobius-project", "evaluate w3..wk on a numeric jet u1,...,uk");
  proj->add_option("--jet", jet_list, "comma-separated derivatives u1,...,uk")->required();
  proj->add_option("--format", project_format, "text | json")->check(CLI::IsMember({"text", "json"}));

  VerifyFlags mobius_verify;
  auto* mver = app.add_subcommand("mobius-verify", "run the Moebius verification suite");
  mobius_verify.suite = "mobius";
  mobius_verify.add_options(mver, false, false);

  JetSource inv_source;
  auto* inv = app.add_subcommand("mink-invariants", "trace invariants, eigenvalues and closed forms of a 2-jet");
  inv_source.add_options(inv);

  JetSource can_source;
  auto* can = app.add_subcommand("mink-canonicalize", "canonical spatial block of a 2-jet");
  can_source.add_options(can);

  VerifyFlags mink_verify;
  auto* kver = app.add_subcommand("mink-verify", "run the Minkowski verification suite");
  mink_verify.suite = "minkowski";
  mink_verify.add_options(kver, false, true);

  VerifyFlags verify;
  auto* ver = app.add_subcommand("verify", "run verification suites");
  verify.add_options(ver, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sym) {
      const InvariantSymbolFamily family = symbolic_invariants(order);
      if (format == "json") {
        print_json(symbolic_json(family));
      } else {
        for (std::size_t i = 0; i < family.symbols.size(); ++i)
          std::cout << family.name(i) << " = " << family.symbols[i].str() << '\n';
      }
      return 0;
    }
    if (*proj) {
      const Eigen::VectorXd u = parse_number_list(jet_list);
      if (u.size() < 3) throw DomainError("no invariants below order 3");
      // Exact arithmetic on the binary values of the input, rounded once.
      std::vector<Rational> exact;
      for (double x : u) exact.emplace_back(mpq_class(x));
      std::vector<double> w;
      for (const Rational& r : canonical_projection(UnivariateJet<Rational>(std::move(exact)))) w.push_back(r.to_double());
      if (project_format == "json") {
        json values = json::object();
        for (std::size_t i = 0; i < w.size(); ++i) values["w" + std::to_string(i + 3)] = w[i];
        print_json({{"jet", vector_json(u)}, {"invariants", values}});
      } else {
        for (std::size_t i = 0; i < w.size(); ++i) std::cout << 'w' << i + 3 << " = " << format_double(w[i]) << '\n';
      }
      return 0;
    }
    if (*mver) return mobius_verify.run();
    if (*kver) return mink_verify.run();
    if (*ver) return verify.run();
    if (*inv || *can) {
      std::optional<std::string> label;
      const ScalarJet2<double> j = (*inv ? inv_source : can_source).load(&label);
      json out = *inv ? to_json(invariant_report(j)) : to_json(canonicalize(j));
      if (label) out["label"] = *label;
      print_json(out);
      return 0;
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // ParseError, ShapeError
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
