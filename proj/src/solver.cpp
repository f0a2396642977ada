#include "difformal/solver.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace difformal {

std::vector<Rational> rational_roots(const ParamPoly& u) {
  auto syms = u.symbols();
  if (syms.size() > 1) throw std::invalid_argument("rational_roots: polynomial must be univariate");
  if (u.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  if (syms.empty()) return {};
  return rational_roots(to_upoly(u, *syms.begin()));
}

namespace {

struct Univariate {
  ParamSymbol var;
  ParamPoly poly;
};

std::optional<Univariate> find_univariate(const std::vector<ParamPoly>& polys,
                                          const std::vector<ParamSymbol>& order) {
  for (auto v = order.rbegin(); v != order.rend(); ++v) {
    for (const auto& p : polys) {
      auto s = p.symbols();
      if (s.size() == 1 && *s.begin() == *v) return Univariate{*v, p};
    }
  }
  return std::nullopt;
}

ParamPoly from_upoly(const UPoly& u, const ParamSymbol& v) {
  ParamPoly out;
  for (int i = 0; i <= u.degree(); ++i)
    out += ParamPoly::term(i == 0 ? ParamPoly::Monomial{} : ParamPoly::Monomial{{v, i}}, u[i]);
  return out;
}

/// Replace every one-symbol polynomial by its square-free part; true if any changed.
bool shrink_univariates(std::vector<ParamPoly>& polys) {
  bool changed = false;
  for (auto& p : polys) {
    const auto syms = p.symbols();
    if (syms.size() != 1) continue;
    const UPoly u = to_upoly(p, *syms.begin());
    const UPoly g = gcd(u, u.derivative());
    if (g.degree() <= 0) continue;
    p = from_upoly(divmod(u, g).first.monic(), *syms.begin());
    changed = true;
  }
  return changed;
}

/// A reduced basis of an ideal with the same zero set as `sys`, radical in
/// every univariate element. Each shrink strictly enlarges the ideal, so the
/// loop terminates.
GroebnerBasis radical_basis(PolySystem sys, const SolverLimits& limits) {
  shrink_univariates(sys.equations);
  for (;;) {
    GroebnerBasis g = buchberger(sys, limits);
    if (!shrink_univariates(g.polys)) return g;
    sys.equations = std::move(g.polys);
  }
}

class Brancher {
 public:
  Brancher(const SolverLimits& limits, Solutions& out) : limits_(limits), out_(out) {}

  void run(const GroebnerBasis& g, const std::map<ParamSymbol, Rational>& assigned) {
    if (g.is_unit()) return;
    if (g.polys.empty()) {
      RuleSet r;
      r.assignments = assigned;
      r.free.insert(g.variables.begin(), g.variables.end());
      out_.rules.push_back(std::move(r));
      return;
    }

    auto uni = find_univariate(g.polys, g.variables);
    if (!uni) uni = probe_elimination(g);
    if (!uni) {
      out_.unresolved.push_back({assigned, g.polys});
      return;
    }

    const UPoly u = to_upoly(uni->poly, uni->var);
    const auto roots = rational_roots(u);

    // Whatever the rational roots leave of the square-free part is reported, not dropped.
    UPoly cofactor({1});
    for (const auto& f : squarefree_decomposition(u)) cofactor = cofactor * f;
    for (const auto& r : roots) cofactor = divmod(cofactor, UPoly({-r, 1})).first;
    if (cofactor.degree() > 0) {
      const ParamPoly residual = from_upoly(cofactor, uni->var);
      std::vector<ParamPoly> basis = g.polys;
      std::replace(basis.begin(), basis.end(), uni->poly, residual);
      if (std::find(basis.begin(), basis.end(), residual) == basis.end()) basis.push_back(residual);
      out_.unresolved.push_back({assigned, std::move(basis)});
    }

    for (const auto& r : roots) {
      RuleSet step;
      step.assignments.emplace(uni->var, r);
      PolySystem next;
      for (const auto& v : g.variables)
        if (v != uni->var) next.variables.push_back(v);
      for (const auto& p : g.polys) {
        ParamPoly q = p.substitute(step);
        if (!q.is_zero()) next.equations.push_back(std::move(q));
      }
      auto assigned_next = assigned;
      assigned_next.emplace(uni->var, r);
      GroebnerBasis h;
      h.variables = next.variables;
      if (!next.equations.empty()) h = radical_basis(std::move(next), limits_);
      run(h, assigned_next);
    }
  }

 private:
  /// Elimination ideal of each occurring variable, least variable first.
  std::optional<Univariate> probe_elimination(const GroebnerBasis& g) {
    std::set<ParamSymbol> occurring;
    for (const auto& p : g.polys) {
      auto s = p.symbols();
      occurring.insert(s.begin(), s.end());
    }
    for (auto v = g.variables.rbegin(); v != g.variables.rend(); ++v) {
      if (!occurring.count(*v)) continue;
      PolySystem sys;
      sys.equations = g.polys;
      for (const auto& w : g.variables)
        if (w != *v) sys.variables.push_back(w);
      sys.variables.push_back(*v);
      GroebnerBasis h = radical_basis(std::move(sys), limits_);
      for (const auto& p : h.polys) {
        auto s = p.symbols();
        if (s.size() == 1 && *s.begin() == *v) return Univariate{*v, p};
      }
    }
    return std::nullopt;
  }

  const SolverLimits& limits_;
  Solutions& out_;
};

}  // namespace

Solutions solve_triangular(const GroebnerBasis& basis, const SolverLimits& limits) {
  Solutions out;
  Brancher(limits, out).run(basis, {});
  return out;
}

Solutions solve_system(const PolySystem& sys, const SolverLimits& limits) {
  bool all_zero = std::all_of(sys.equations.begin(), sys.equations.end(),
                              [](const ParamPoly& p) { return p.is_zero(); });
  if (all_zero) {
    Solutions out;
    RuleSet r;
    r.free.insert(sys.variables.begin(), sys.variables.end());
    out.rules.push_back(std::move(r));
    return out;
  }
  return solve_triangular(radical_basis(sys, limits), limits);
}

std::vector<ParamSymbol> default_variable_order(const std::vector<ParamSymbol>& creation_order) {
  return {creation_order.rbegin(), creation_order.rend()};
}

}  // namespace difformal
