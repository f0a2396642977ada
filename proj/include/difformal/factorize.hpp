#pragma once

#include <vector>

#include "difformal/diffpoly.hpp"

namespace difformal {

/// free(x) + sum_{j<k} c_j y^(j) + y^(k), monic in y^(k). The free term is
/// sum_d free_coeffs[d] x^d.
struct LinearForm {
  int k = 0;
  std::vector<ParamSymbol> free_coeffs;
  std::vector<ParamSymbol> y_coeffs;

  DiffPoly as_diffpoly() const;
  /// Creation order: free-term coefficients by ascending power, then y_coeffs.
  std::vector<ParamSymbol> parameters() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// The shared factor L_{c,k}: W[0,k] (or V[0..D] when free_poly_degree > 0) + W[1,k] y + ... + y^(k).
LinearForm build_common_form(int k, int free_poly_degree);

/// The fresh form of GENERAL mode for factor position sigma = k + i in iteration mu.
LinearForm build_fresh_form(int k, int sigma, int mu, int free_poly_degree);

enum class FactorMode { Common, General };

struct FactorPower {
  std::size_t form = 0;  ///< index into Factorization::forms
  int deriv_order = 0;
  int exponent = 1;

  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

/// coeff * prod (forms[f.form]^(f.deriv_order))^f.exponent, with coeff of order < k.
struct FactorSummand {
  DiffPoly coeff;
  std::vector<FactorPower> factors;
};

struct Factorization {
  DiffPoly p_input;
  int k = 0;
  FactorMode mode = FactorMode::Common;
  int free_poly_degree = 0;
  std::vector<LinearForm> forms;  ///< forms[0] is the common factor L_{c,k}
  std::vector<FactorSummand> summands;
  DiffPoly remainder;

  /// All parameters in creation order (common form first, then fresh forms).
  std::vector<ParamSymbol> parameters() const;
};

/// Run the reduction loop: eliminate the maximal term of order >= k against
/// derivatives of linear forms until only terms of order < k remain.
///
/// Requires p != 0, 0 <= k <= order(p) and no parameters in p; throws
/// std::invalid_argument otherwise.
Factorization formal_k_factorization(const DiffPoly& p, int k, FactorMode mode,
                                     int free_poly_degree = 0);

/// Sum of all summands plus the remainder. Equals p_input for engine output.
DiffPoly expand(const Factorization& f);

/// Coefficient of every x/y-monomial of the remainder, in descending lex order.
std::vector<ParamPoly> remainder_system(const Factorization& f);

}  // namespace difformal
