#pragma once

#include <map>
#include <vector>

#include "difformal/groebner.hpp"
#include "difformal/upoly.hpp"

namespace difformal {

/// A branch that back-substitution could not finish: the values fixed so far and
/// the residual basis (positive-dimensional, or with non-rational roots).
struct UnresolvedComponent {
  std::map<ParamSymbol, Rational> partial;
  std::vector<ParamPoly> basis;
};

struct Solutions {
  std::vector<RuleSet> rules;
  std::vector<UnresolvedComponent> unresolved;
};

/// Rational roots of a polynomial in a single symbol, ascending, without multiplicity.
std::vector<Rational> rational_roots(const ParamPoly& u);

/// Back-substitution over a reduced lex basis, branching on the rational roots
/// of univariate elements and recomputing the basis after each assignment.
Solutions solve_triangular(const GroebnerBasis& basis, const SolverLimits& limits = {});

/// Basis of the radical of every univariate element, then solve_triangular; an
/// all-zero system yields one rule with every variable free.
Solutions solve_system(const PolySystem& sys, const SolverLimits& limits = {});

/// Lex order (largest first) from parameters listed in creation order.
std::vector<ParamSymbol> default_variable_order(const std::vector<ParamSymbol>& creation_order);

}  // namespace difformal
