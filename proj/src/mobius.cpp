#include "jetred/mobius.hpp"

namespace jetred {

UnivariateJet<LaurentPolynomial> symbolic_jet(const Variables& vars, int k) {
  if (static_cast<std::size_t>(k) > vars->size()) throw ShapeError("symbolic_jet: too few symbols");
  std::vector<LaurentPolynomial> u;
  for (int l = 0; l < k; ++l) u.push_back(LaurentPolynomial::variable(vars, static_cast<std::size_t>(l)));
  return UnivariateJet<LaurentPolynomial>(std::move(u));
}

InvariantSymbolFamily symbolic_invariants(int k) {
  if (k < 3) throw DomainError("no invariants below order 3");
  InvariantSymbolFamily family;
  family.order = k;
  family.variables = jet_variables(k);
  family.symbols = canonical_projection(symbolic_jet(family.variables, k));
  return family;
}

}  // namespace jetred
