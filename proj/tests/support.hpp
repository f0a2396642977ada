#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "difformal/diffpoly.hpp"
#include "difformal/param_poly.hpp"

namespace difformal::testing {

/// Thin wrapper so every property test draws from an explicit, fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform_int(0, 1) == 1; }

  /// num/den with den in [1, 4] and |num/den| <= bound, never zero.
  Rational nonzero_rational(int bound = 5) {
    for (;;) {
      const int den = uniform_int(1, 4);
      const int num = uniform_int(-bound * den, bound * den);
      if (num == 0) continue;
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

struct DiffPolyShape {
  int max_order = 3;
  int max_degree = 3;  ///< x-degree plus y-degree of each monomial
  int max_terms = 6;
  int coeff_bound = 5;
};

/// Random monomial within the degree bound.
inline DiffMonomial random_monomial(Rng& rng, const DiffPolyShape& shape) {
  DiffMonomial m;
  int budget = rng.uniform_int(0, shape.max_degree);
  while (budget > 0) {
    const int slot = rng.uniform_int(-1, shape.max_order);
    if (slot < 0)
      m.x_exp += 1;
    else
      m = m * DiffMonomial::y(slot);
    --budget;
  }
  return m;
}

/// Random p with at least one y-dependent term.
inline DiffPoly random_diffpoly(Rng& rng, const DiffPolyShape& shape = {}) {
  for (;;) {
    DiffPoly p;
    const int terms = rng.uniform_int(1, shape.max_terms);
    for (int i = 0; i < terms; ++i)
      p.add_term(random_monomial(rng, shape), ParamPoly(rng.nonzero_rational(shape.coeff_bound)));
    if (p.order()) return p;
  }
}

/// Random polynomial in the given symbols, up to `max_terms` terms of degree <= max_degree.
inline ParamPoly random_param_poly(Rng& rng, const std::vector<ParamSymbol>& syms, int max_terms = 4,
                                   int max_degree = 3) {
  ParamPoly p;
  const int terms = rng.uniform_int(0, max_terms);
  for (int i = 0; i < terms; ++i) {
    ParamPoly t(rng.nonzero_rational());
    const int deg = rng.uniform_int(0, max_degree);
    for (int d = 0; d < deg; ++d)
      t *= ParamPoly::symbol(syms[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(syms.size()) - 1))]);
    p += t;
  }
  return p;
}

inline ParamPoly W(int j, int sigma) { return ParamPoly::symbol(ParamSymbol::w(j, sigma)); }
inline ParamPoly V(int d) { return ParamPoly::symbol(ParamSymbol::v(d)); }

inline DiffMonomial yprod(std::vector<int> exps, int x_exp = 0) {
  DiffMonomial m;
  m.x_exp = x_exp;
  m.deriv_exps = std::move(exps);
  m.trim();
  return m;
}

/// The order-3 polynomial cubic in y'' whose linear solutions are y = c,
/// y = c1*x + c2 and y = c1*exp(x) - 2*x + c2.
inline const std::string kCubicSecondDerivative =
    "(y'')^3 - 2*y'*(y'')^2 - 4*(y'')^2 + (y')^2*y''' + 4*y'*y''' + 4*y'''";

/// Order-3 polynomial with x-dependent coefficients; linear order-1 factors
/// need a quadratic free term.
inline const std::string kPolynomialForcing = "(x^2 - x)*y' + x*y'' - x^2*y''' - 2*x^3 - 3*x^2 + 3*x";

/// Order-3 polynomial used for GENERAL-mode factorization.
inline const std::string kQuadraticSecondDerivative = "4*y''' - 4*(y'')^2 + y'*y'' - 1/16*(y')^2 - 1";

}  // namespace difformal::testing

#include <map>
#include <set>

#include "difformal/groebner.hpp"

namespace difformal::testing {

/// A system with a known finite set of integer solutions in {-3..3}^n.
struct PlantedSystem {
  PolySystem system;
  std::vector<std::vector<int>> planted;
};

/// Per-variable root products through the planted points, products of random
/// linear forms through every point, then mixed by adding multiples of other
/// equations. Every equation has degree <= 3 in <= 3 variables.
inline PlantedSystem random_planted_system(Rng& rng) {
  PlantedSystem out;
  const int n = rng.uniform_int(1, 3);
  for (int i = n - 1; i >= 0; --i) out.system.variables.push_back(ParamSymbol::w(i, 9));
  std::vector<ParamPoly> vars;
  for (int i = 0; i < n; ++i) vars.push_back(ParamPoly::symbol(ParamSymbol::w(i, 9)));

  const int points = rng.uniform_int(1, 3);
  for (int p = 0; p < points; ++p) {
    std::vector<int> pt;
    for (int i = 0; i < n; ++i) pt.push_back(rng.uniform_int(-3, 3));
    out.planted.push_back(pt);
  }

  auto& eqs = out.system.equations;
  for (int i = 0; i < n; ++i) {
    std::set<int> values;
    for (const auto& pt : out.planted) values.insert(pt[static_cast<std::size_t>(i)]);
    ParamPoly e(1);
    for (int v : values) e *= vars[static_cast<std::size_t>(i)] - v;
    eqs.push_back(e);
  }
  const int extra = rng.uniform_int(0, 2);
  for (int t = 0; t < extra; ++t) {
    ParamPoly e(1);
    for (const auto& pt : out.planted) {
      ParamPoly lin;
      for (int i = 0; i < n; ++i)
        lin += ParamPoly(rng.uniform_int(-3, 3)) * (vars[static_cast<std::size_t>(i)] - pt[static_cast<std::size_t>(i)]);
      e *= lin;
    }
    if (!e.is_zero()) eqs.push_back(e);
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(eqs.size()) - 1));
    if (j != i && eqs[j].total_degree() <= 3) eqs[i] += ParamPoly(rng.uniform_int(-2, 2)) * eqs[j];
  }
  return out;
}

/// Every point of {-3..3}^n satisfying all equations.
inline std::set<std::map<ParamSymbol, Rational>> brute_force_solutions(const PolySystem& sys) {
  std::set<std::map<ParamSymbol, Rational>> found;
  const std::size_t n = sys.variables.size();
  std::vector<int> cur(n, -3);
  for (;;) {
    RuleSet rule;
    for (std::size_t i = 0; i < n; ++i) rule.assignments[sys.variables[i]] = cur[i];
    if (std::all_of(sys.equations.begin(), sys.equations.end(),
                    [&](const ParamPoly& e) { return e.substitute(rule).is_zero(); }))
      found.insert(rule.assignments);
    std::size_t i = 0;
    while (i < n && cur[i] == 3) cur[i++] = -3;
    if (i == n) break;
    ++cur[i];
  }
  return found;
}

inline DiffPoly term(const ParamPoly& c, const DiffMonomial& m) { return DiffPoly::monomial(m, c); }

/// Remainder of the cubic test polynomial at k = 2, written out term by term
/// (W0, W1, W2 = W[0,2], W[1,2], W[2,2]).
inline DiffPoly reference_remainder() {
  const ParamPoly w0 = W(0, 2), w1 = W(1, 2), w2 = W(2, 2);
  DiffPoly r;
  r += term(-3 * w1 * w0 * w0 - 8 * w1 * w0 + 4 * w1 * w2, yprod({1}));
  r += term(-3 * w0 * w1 * w1 - 4 * w1 * w1, yprod({2}));
  r += term(-(w1 * w1 * w1), yprod({3}));
  r += term(-3 * w2 * w0 * w0 - 2 * w0 * w0 - 4 * w2 * w0 + 4 * w2 * w2 - 4 * w1, yprod({0, 1}));
  r += term(-4 * w0 * w1 - 6 * w0 * w2 * w1 - 4 * w2 * w1, yprod({1, 1}));
  r += term(-3 * w2 * w1 * w1 - 2 * w1 * w1, yprod({2, 1}));
  r += term(-3 * w0 * w2 * w2 - 3 * w0 * w2 - 4 * w1, yprod({0, 2}));
  r += term(-3 * w1 * w2 * w2 - 3 * w1 * w2, yprod({1, 2}));
  r += term(-(w2 * w2 * w2) - w2 * w2 - w1, yprod({0, 3}));
  r += term(4 * w2 * w0 - w0 * w0 * w0 - 4 * w0 * w0, DiffMonomial());
  return r;
}

}  // namespace difformal::testing
