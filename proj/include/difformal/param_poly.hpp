#pragma once

// Exact scalars and polynomials in the undetermined parameters.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace difformal {

using Integer = mpz_class;
using Rational = mpq_class;

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

enum class ParamKind : std::uint8_t { W, V };

/// An undetermined parameter. W carries (j, sigma) or (j, sigma, mu); V carries
/// (d) or (d, sigma, mu) for the x^d coefficient of a polynomial free term.
struct ParamSymbol {
  ParamKind kind = ParamKind::W;
  std::uint8_t arity = 0;
  std::array<int, 3> idx{};

  static ParamSymbol w(int j, int sigma);
  static ParamSymbol w(int j, int sigma, int mu);
  static ParamSymbol v(int d);
  static ParamSymbol v(int d, int sigma, int mu);

  std::string name() const;

  auto operator<=>(const ParamSymbol&) const = default;
};

struct RuleSet;

class ParamPoly {
 public:
  /// Sorted by symbol, exponents strictly positive.
  using Monomial = std::vector<std::pair<ParamSymbol, int>>;
  using TermMap = std::map<Monomial, Rational>;

  ParamPoly() = default;
  ParamPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  ParamPoly(long c) : ParamPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  ParamPoly(int c) : ParamPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static ParamPoly symbol(const ParamSymbol& s);
  static ParamPoly term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of the constant term (0 if absent).
  Rational constant_term() const;
  std::set<ParamSymbol> symbols() const;
  int degree_in(const ParamSymbol& s) const;
  int total_degree() const;
  /// Coefficient of s^e viewed as a polynomial in s over the other symbols.
  ParamPoly coefficient_of(const ParamSymbol& s, int e) const;

  ParamPoly substitute(const RuleSet& rule) const;
  double evaluate(const std::map<ParamSymbol, double>& values) const;

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const Rational& c);

 private:
  TermMap terms_;
};

ParamPoly::Monomial monomial_product(const ParamPoly::Monomial& a, const ParamPoly::Monomial& b);
int monomial_degree(const ParamPoly::Monomial& m);

enum class CombineOp { Add, Sub, Mul };
ParamPoly combine(const ParamPoly& a, const ParamPoly& b, CombineOp op);

/// Terms by descending total degree, e.g. "-3*W[1,2]*W[0,2]^2 + 4*W[2,2] - 1".
std::string to_string(const ParamPoly& p);
std::string to_string(const ParamPoly::Monomial& m);

/// Assignment of parameters to exact values; `free` lists the ones left arbitrary.
struct RuleSet {
  std::map<ParamSymbol, Rational> assignments;
  std::set<ParamSymbol> free;

  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

std::string to_string(const RuleSet& r);

}  // namespace difformal
