#include "jetred/jet_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "jetred/errors.hpp"

namespace jetred {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                  const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
  for (const auto& key : required)
    if (!j.contains(key)) throw ParseError(std::string(what) + ": missing key '" + key + "'");
  for (const auto& [key, value] : j.items())
    if (!required.count(key) && !optional.count(key))
      throw ParseError(std::string(what) + ": unknown key '" + key + "'");
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(what) + ": non-finite number");
  return x;
}

Eigen::VectorXd vector_of(const json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || (n >= 0 && static_cast<Eigen::Index>(j.size()) != n))
    throw ParseError(std::string(what) + ": expected an array of " + std::to_string(n) + " numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], what);
  return v;
}

Eigen::MatrixXd matrix_of(const json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " rows");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m.row(i) = vector_of(j[static_cast<std::size_t>(i)], n, what).transpose();
  return m;
}

int positive_int(const json& j, int lo, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < lo || j.get<long long>() > 1000)
    throw ParseError(std::string(what) + ": expected an integer >= " + std::to_string(lo));
  return j.get<int>();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

JetFile jet_file_from_json(const json& j) {
  require_keys(j, {"n", "u", "u2"}, {"label"}, "jet file");
  JetFile f;
  f.n = positive_int(j["n"], 2, "jet file: n");
  f.u = vector_of(j["u"], f.n, "jet file: u");
  f.u2 = matrix_of(j["u2"], f.n, "jet file: u2");
  const double scale = std::max(1.0, f.u2.cwiseAbs().maxCoeff());
  if ((f.u2 - f.u2.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ParseError("jet file: u2 is not symmetric");
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("jet file: label must be a string");
    f.label = j["label"].get<std::string>();
  }
  return f;
}

json to_json(const JetFile& f) {
  json j = {{"n", f.n}, {"u", vector_json(f.u)}, {"u2", matrix_json(f.u2)}};
  if (f.label) j["label"] = *f.label;
  return j;
}

JetFile load_jet_file(const std::string& path) { return jet_file_from_json(read_json_file(path)); }

TestFunction test_function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("function file: missing string key 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "polynomial") {
      require_keys(j, {"kind", "n", "terms"}, {}, "function file");
      const int n = positive_int(j["n"], 1, "function file: n");
      if (!j["terms"].is_array()) throw ParseError("function file: terms must be an array");
      std::vector<MultivariatePolynomial::Term> terms;
      for (const json& t : j["terms"]) {
        require_keys(t, {"coefficient", "exponents"}, {}, "function file term");
        const Eigen::VectorXd e = vector_of(t["exponents"], n, "function file: exponents");
        std::vector<int> exps;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (e(i) != std::floor(e(i))) throw ParseError("function file: exponents must be integers");
          exps.push_back(static_cast<int>(e(i)));
        }
        terms.push_back({number(t["coefficient"], "function file: coefficient"), exps});
      }
      return MultivariatePolynomial(n, std::move(terms));
    }
    if (kind == "composite") {
      require_keys(j, {"kind", "outer", "c", "g", "H"}, {}, "function file");
      QuadraticComposite f;
      const Eigen::VectorXd outer = vector_of(j["outer"], -1, "function file: outer");
      f.outer.coefficients.assign(outer.data(), outer.data() + outer.size());
      f.c = number(j["c"], "function file: c");
      f.g = vector_of(j["g"], -1, "function file: g");
      f.H = matrix_of(j["H"], f.g.size(), "function file: H");
      f.validate();
      return f;
    }
  } catch (const ShapeError& e) {
    throw ParseError(std::string("function file: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("function file: ") + e.what());
  }
  throw ParseError("function file: unknown kind '" + kind + "'");
}

json to_json(const TestFunction& f) {
  if (const auto* p = std::get_if<MultivariatePolynomial>(&f)) {
    json terms = json::array();
    for (const auto& t : p->terms()) terms.push_back({{"coefficient", t.coefficient}, {"exponents", t.exponents}});
    return {{"kind", "polynomial"}, {"n", p->dimension()}, {"terms", terms}};
  }
  const auto& q = std::get<QuadraticComposite>(f);
  return {{"kind", "composite"},
          {"outer", q.outer.coefficients},
          {"c", q.c},
          {"g", vector_json(q.g)},
          {"H", matrix_json(q.H)}};
}

TestFunction load_test_function(const std::string& path) { return test_function_from_json(read_json_file(path)); }

json to_json(const InvariantReport& r) {
  json j = {{"n", r.n},
            {"S", r.S},
            {"sigma", r.sigma},
            {"eigenvalues", vector_json(r.eigenvalues)},
            {"D_closed", r.D_closed},
            {"residuals", {{"newton", r.newton_residual}, {"closed_form", r.closed_form_residuals}}}};
  return j;
}

json to_json(const CanonicalJet& c) {
  return {{"n", c.n},
          {"w_tilde", matrix_json(c.w_tilde)},
          {"eigenvalues", vector_json(c.eigenvalues)},
          {"frame", matrix_json(c.frame)}};
}

Eigen::VectorXd parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string_view s(item);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x))
      throw ParseError("bad number '" + item + "'");
    values.push_back(x);
  }
  if (values.empty()) throw ParseError("empty number list");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace jetred
