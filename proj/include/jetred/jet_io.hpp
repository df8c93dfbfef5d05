#ifndef JETRED_JET_IO_HPP
#define JETRED_JET_IO_HPP

#include <optional>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "jetred/jet_extraction.hpp"
#include "jetred/minkowski_jets.hpp"
#include "jetred/minkowski_reduction.hpp"

namespace jetred {

/// {"n": 4, "u": [..n..], "u2": [[..n..] x n], "label": "optional"}
struct JetFile {
  int n = 0;
  Eigen::VectorXd u;
  Eigen::MatrixXd u2;
  std::optional<std::string> label;

  ScalarJet2<double> jet() const { return ScalarJet2<double>(u, u2); }
};

/// Validates shape, finiteness and symmetry of u2 (1e-12); ParseError otherwise.
JetFile jet_file_from_json(const nlohmann::json& j);
nlohmann::json to_json(const JetFile& f);
JetFile load_jet_file(const std::string& path);

/// {"kind": "polynomial", "n": 4, "terms": [{"coefficient": c, "exponents": [..]}]}
/// {"kind": "composite", "outer": [p0, ..], "c": c, "g": [..], "H": [[..]]}
TestFunction test_function_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TestFunction& f);
TestFunction load_test_function(const std::string& path);

nlohmann::json to_json(const InvariantReport& r);
nlohmann::json to_json(const CanonicalJet& c);

nlohmann::json vector_json(const Eigen::VectorXd& v);
nlohmann::json matrix_json(const Eigen::MatrixXd& m);

/// Comma-separated numbers, e.g. "0,1,0.5"; ParseError on bad input.
Eigen::VectorXd parse_number_list(const std::string& text);

}  // namespace jetred

#endif  // JETRED_JET_IO_HPP
