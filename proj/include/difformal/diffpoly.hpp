#pragma once

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "difformal/param_poly.hpp"

namespace difformal {

/// x^{x_exp} * prod_i (y^(i))^{deriv_exps[i]}. Trailing zeros of deriv_exps are trimmed.
struct DiffMonomial {
  int x_exp = 0;
  std::vector<int> deriv_exps;

  static DiffMonomial x_power(int a);
  static DiffMonomial y(int order, int exponent = 1);

  int exponent_of(int order) const;
  /// Highest derivative present, or -1 when the monomial is free of y.
  int order() const { return static_cast<int>(deriv_exps.size()) - 1; }
  int total_degree() const;
  void trim();

  friend bool operator==(const DiffMonomial&, const DiffMonomial&) = default;
};

DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b);

/// Ranking of terms: compare derivative exponents from the highest order down,
/// then the x exponent.
std::strong_ordering lex_compare(const DiffMonomial& a, const DiffMonomial& b);

struct LexLess {
  bool operator()(const DiffMonomial& a, const DiffMonomial& b) const {
    return lex_compare(a, b) < 0;
  }
};

/// Polynomial in x, y, y', ... with ParamPoly coefficients.
class DiffPoly {
 public:
  using TermMap = std::map<DiffMonomial, ParamPoly, LexLess>;

  DiffPoly() = default;
  DiffPoly(const ParamPoly& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(int c) : DiffPoly(ParamPoly(c)) {}  // NOLINT(google-explicit-constructor)

  static DiffPoly monomial(const DiffMonomial& m, const ParamPoly& c = 1);
  static DiffPoly x();
  static DiffPoly y(int order = 0);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Highest derivative order of y; nullopt when p does not involve y.
  std::optional<int> order() const;
  /// Lex-greatest term. Throws EmptyPolynomial on zero.
  std::pair<DiffMonomial, ParamPoly> max_term() const;

  DiffPoly differentiate() const;
  DiffPoly derivative(int times) const;
  DiffPoly pow(int e) const;
  DiffPoly substitute_params(const RuleSet& rule) const;
  std::set<ParamSymbol> parameters() const;

  void add_term(const DiffMonomial& m, const ParamPoly& c);

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

DiffPoly combine(const DiffPoly& a, const DiffPoly& b, CombineOp op);

/// Values of x and y, y', ..., y^(n) at one point.
struct NumericPoint {
  double x = 0.0;
  std::vector<double> y_derivs;
};

/// Throws UnresolvedParameter if any coefficient still carries a parameter.
double evaluate_numeric(const DiffPoly& p, const NumericPoint& pt);
/// Largest |term| at pt; used to normalise residuals.
double max_term_magnitude(const DiffPoly& p, const NumericPoint& pt);

}  // namespace difformal
