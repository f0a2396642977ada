#pragma once

// Closed-form general solutions of constant-coefficient linear ODEs with
// polynomial forcing.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "difformal/diffpoly.hpp"
#include "difformal/upoly.hpp"

namespace difformal {

using Numeric = boost::multiprecision::cpp_bin_float_50;
using NumericComplex = boost::multiprecision::cpp_complex_50;

/// a + b*sqrt(d) with d a square-free integer, d != 1. Negative d gives the
/// complex number a + b*i*sqrt(-d). b == 0 means a plain rational.
struct QuadNumber {
  Rational a;
  Rational b;
  long d = 0;

  static QuadNumber rational(const Rational& q) { return {q, 0, 0}; }
  bool is_rational() const { return sgn(b) == 0; }
  bool is_real() const { return is_rational() || d > 0; }
  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  NumericComplex approx() const;

  friend QuadNumber operator+(const QuadNumber& x, const QuadNumber& y);
  friend QuadNumber operator-(const QuadNumber& x, const QuadNumber& y);
  friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y);
  friend bool operator==(const QuadNumber& x, const QuadNumber& y);
};

/// y^(k) + sum_{j<k} y_coeffs[j] y^(j) = sum_i forcing[i] x^i.
struct LinearOde {
  int order = 0;
  std::vector<ParamPoly> y_coeffs;
  std::vector<ParamPoly> forcing;

  /// From a monic linear differential polynomial free(x) + sum a_j y^(j) + y^(k).
  /// Throws std::invalid_argument if L is not of that shape.
  static LinearOde from_factor(const DiffPoly& linear);
  DiffPoly as_diffpoly() const;
  bool has_rational_coefficients() const;
  /// lambda^k + a_{k-1} lambda^{k-1} + ... + a_0; requires rational coefficients.
  UPoly characteristic_polynomial() const;
};

struct CharRoot {
  std::optional<QuadNumber> exact;
  NumericComplex value;
  int multiplicity = 1;

  bool is_real() const;
  bool is_zero() const { return exact && exact->is_zero(); }
};

/// Distinct roots with multiplicities summing to the order. Rational roots come
/// first (ascending), then exact surds from quadratic square-free factors, then
/// numeric roots (Aberth iteration) for higher-degree factors; complex roots
/// are listed as (upper, conjugate) pairs. `digits` sets the numeric target.
std::vector<CharRoot> characteristic_roots(const LinearOde& ode, int digits = 30);
std::vector<CharRoot> polynomial_roots(const UPoly& p, int digits = 30);

enum class Oscillation { None, Cos, Sin };

/// constant * x^x_power * exp(Re(root) x) * {1, cos, sin}(|Im(root)| x)
struct HomogeneousTerm {
  int constant = 0;
  int x_power = 0;
  CharRoot root;
  Oscillation osc = Oscillation::None;
};

/// constant * shape(x): a folded free parameter that did not land on a single power of x.
struct FoldedTerm {
  int constant = 0;
  UPoly shape;
};

struct GeneralSolution {
  int order = 0;
  std::vector<HomogeneousTerm> homogeneous;
  std::vector<ParamPoly> particular;  ///< coefficient of x^i
  std::vector<FoldedTerm> folded;
  /// Set when a y-coefficient depends on a free symbol: no closed form is built.
  std::optional<LinearOde> unsolved;
  std::set<ParamSymbol> retained;

  bool parametric() const { return unsolved.has_value() || !retained.empty(); }
  int constant_count() const;
  bool exact_rates() const;
};

/// Homogeneous basis from the characteristic roots plus a particular polynomial
/// by undetermined coefficients (degree raised by the multiplicity of root 0).
/// Order 0 gives y = forcing with no constants.
GeneralSolution general_solution(const LinearOde& ode, int digits = 30);

/// Replace free parameters that enter the particular part affinely by new
/// arbitrary constants; others stay in place and mark the family parametric.
GeneralSolution fold_free_parameters(GeneralSolution sol, const std::set<ParamSymbol>& free);

/// Canonical text: oscillating/exponential terms, then the polynomial part in
/// descending powers; constants named c1, c2, ... in order (a lone one is "c").
std::string format_solution(const GeneralSolution& sol);

/// Exact substitution check against `ode`; nullopt if some rate is numeric or
/// the solution has folded terms.
std::optional<bool> check_exact(const LinearOde& ode, const GeneralSolution& sol);

/// y, y', ..., y^(max_order) at x. `constants` is indexed by constant id;
/// `params` supplies values of retained symbols.
std::vector<double> evaluate_solution(const GeneralSolution& sol, double x,
                                      const std::vector<double>& constants,
                                      const std::map<ParamSymbol, double>& params, int max_order);

}  // namespace difformal
