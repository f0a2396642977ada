#pragma once

#include <cstddef>
#include <vector>

#include "difformal/param_poly.hpp"

namespace difformal {

/// Equations (each = 0) over `variables`, listed from the lex-largest to the lex-smallest.
struct PolySystem {
  std::vector<ParamPoly> equations;
  std::vector<ParamSymbol> variables;
};

struct SolverLimits {
  std::size_t max_pairs = 100000;
  int max_degree = 64;
  /// Bound on term count times coefficient bit size of any intermediate polynomial.
  std::size_t max_polynomial_bits = std::size_t{1} << 22;
  /// Bound on the term count of any intermediate polynomial.
  std::size_t max_terms = 20000;
};

/// Reduced lex basis, sorted by ascending leading monomial. {1} for an
/// inconsistent system, empty for the zero ideal.
struct GroebnerBasis {
  std::vector<ParamPoly> polys;
  std::vector<ParamSymbol> variables;

  bool is_unit() const { return polys.size() == 1 && polys.front() == ParamPoly(1); }
};

/// Buchberger's algorithm with the coprime and chain criteria.
/// Throws std::invalid_argument if an equation uses a symbol outside
/// `variables`, ResourceLimit when a limit is exceeded.
GroebnerBasis buchberger(const PolySystem& sys, const SolverLimits& limits = {});

/// Full normal form of p modulo the basis.
ParamPoly reduce(const ParamPoly& p, const GroebnerBasis& basis);

/// S-polynomial of two basis elements under the basis' lex order.
ParamPoly s_polynomial(const ParamPoly& f, const ParamPoly& g, const std::vector<ParamSymbol>& variables);

/// Leading monomial under lex order with `variables` largest-first.
ParamPoly::Monomial leading_monomial(const ParamPoly& p, const std::vector<ParamSymbol>& variables);

}  // namespace difformal
