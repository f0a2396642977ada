#pragma once

#include <utility>
#include <vector>

#include "difformal/param_poly.hpp"

namespace difformal {

/// Dense univariate polynomial over Q, coeffs[i] multiplies t^i; no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Rational& leading() const { return coeffs_.back(); }
  Rational operator[](int i) const;

  Rational eval(const Rational& t) const;
  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// Yun's square-free decomposition: factors[i] is the product of the irreducible
/// factors of multiplicity i + 1 (monic, possibly constant 1).
std::vector<UPoly> squarefree_decomposition(const UPoly& p);

/// Rational roots, ascending, each listed once. Coefficients must fit the
/// divisor search (throws ResourceLimit beyond ~1e14).
std::vector<Rational> rational_roots(const UPoly& p);

/// View a ParamPoly in at most one symbol as a UPoly. Throws std::invalid_argument otherwise.
UPoly to_upoly(const ParamPoly& p, const ParamSymbol& var);

}  // namespace difformal
