#include "difformal/factorize.hpp"

#include <map>
#include <stdexcept>

namespace difformal {

DiffPoly LinearForm::as_diffpoly() const {
  DiffPoly out = DiffPoly::y(k);
  for (std::size_t d = 0; d < free_coeffs.size(); ++d)
    out.add_term(DiffMonomial::x_power(static_cast<int>(d)), ParamPoly::symbol(free_coeffs[d]));
  for (std::size_t j = 0; j < y_coeffs.size(); ++j)
    out.add_term(DiffMonomial::y(static_cast<int>(j)), ParamPoly::symbol(y_coeffs[j]));
  return out;
}

std::vector<ParamSymbol> LinearForm::parameters() const {
  std::vector<ParamSymbol> out = free_coeffs;
  out.insert(out.end(), y_coeffs.begin(), y_coeffs.end());
  return out;
}

LinearForm build_common_form(int k, int free_poly_degree) {
  if (k < 0 || free_poly_degree < 0) throw std::invalid_argument("k and free_poly_degree must be >= 0");
  LinearForm f;
  f.k = k;
  if (free_poly_degree == 0) {
    f.free_coeffs.push_back(ParamSymbol::w(0, k));
  } else {
    for (int d = 0; d <= free_poly_degree; ++d) f.free_coeffs.push_back(ParamSymbol::v(d));
  }
  for (int j = 1; j <= k; ++j) f.y_coeffs.push_back(ParamSymbol::w(j, k));
  return f;
}

LinearForm build_fresh_form(int k, int sigma, int mu, int free_poly_degree) {
  LinearForm f;
  f.k = k;
  if (free_poly_degree == 0) {
    f.free_coeffs.push_back(ParamSymbol::w(0, sigma, mu));
  } else {
    for (int d = 0; d <= free_poly_degree; ++d) f.free_coeffs.push_back(ParamSymbol::v(d, sigma, mu));
  }
  for (int j = 1; j <= k; ++j) f.y_coeffs.push_back(ParamSymbol::w(j, sigma, mu));
  return f;
}

std::vector<ParamSymbol> Factorization::parameters() const {
  std::vector<ParamSymbol> out;
  for (const auto& f : forms) {
    auto ps = f.parameters();
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

namespace {

/// Memoised (form^(i))^e for one LinearForm.
class PowerCache {
 public:
  explicit PowerCache(const LinearForm& form) : base_(form.as_diffpoly()) {}

  const DiffPoly& get(int deriv, int exponent) {
    auto key = std::make_pair(deriv, exponent);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    DiffPoly value = exponent == 1 ? derivative(deriv) : get(deriv, exponent - 1) * derivative(deriv);
    return cache_.emplace(key, std::move(value)).first->second;
  }

 private:
  const DiffPoly& derivative(int deriv) {
    while (static_cast<int>(derivs_.size()) <= deriv)
      derivs_.push_back(derivs_.empty() ? base_ : derivs_.back().differentiate());
    return derivs_[static_cast<std::size_t>(deriv)];
  }

  DiffPoly base_;
  std::vector<DiffPoly> derivs_;
  std::map<std::pair<int, int>, DiffPoly> cache_;
};

}  // namespace

Factorization formal_k_factorization(const DiffPoly& p, int k, FactorMode mode, int free_poly_degree) {
  if (p.is_zero()) throw std::invalid_argument("formal_k_factorization: p must be nonzero");
  const auto n = p.order();
  if (!n || k < 0 || k > *n) throw std::invalid_argument("formal_k_factorization: k must lie in [0, order(p)]");
  if (!p.parameters().empty()) throw std::invalid_argument("formal_k_factorization: p must be parameter-free");

  Factorization f;
  f.p_input = p;
  f.k = k;
  f.mode = mode;
  f.free_poly_degree = free_poly_degree;
  f.forms.push_back(build_common_form(k, free_poly_degree));

  PowerCache common(f.forms[0]);
  DiffPoly rest = p;
  int mu = 0;
  while (!rest.is_zero()) {
    auto [top, s] = rest.max_term();
    if (top.order() < k) break;
    ++mu;

    FactorSummand summand;
    DiffMonomial lower;
    lower.x_exp = top.x_exp;
    lower.deriv_exps.assign(top.deriv_exps.begin(), top.deriv_exps.begin() + k);
    lower.trim();
    summand.coeff = DiffPoly::monomial(lower, s);

    DiffPoly product = summand.coeff;
    for (int i = k; i <= top.order(); ++i) {
      const int e = top.exponent_of(i);
      if (e == 0) continue;
      if (mode == FactorMode::Common || i == k) {
        summand.factors.push_back({0, i - k, e});
        product = product * common.get(i - k, e);
      } else {
        f.forms.push_back(build_fresh_form(k, i, mu, free_poly_degree));
        summand.factors.push_back({f.forms.size() - 1, i - k, e});
        product = product * f.forms.back().as_diffpoly().derivative(i - k).pow(e);
      }
    }
    rest -= product;
    f.summands.push_back(std::move(summand));

    if (!rest.is_zero()) {
      auto next = rest.max_term().first;
      if (next.order() >= k && lex_compare(next, top) >= 0)
        throw std::logic_error("formal_k_factorization: maximal term did not decrease");
    }
  }
  f.remainder = std::move(rest);
  return f;
}

DiffPoly expand(const Factorization& f) {
  DiffPoly total = f.remainder;
  for (const auto& s : f.summands) {
    DiffPoly term = s.coeff;
    for (const auto& fp : s.factors)
      term = term * f.forms.at(fp.form).as_diffpoly().derivative(fp.deriv_order).pow(fp.exponent);
    total += term;
  }
  return total;
}

std::vector<ParamPoly> remainder_system(const Factorization& f) {
  std::vector<ParamPoly> out;
  for (auto it = f.remainder.terms().rbegin(); it != f.remainder.terms().rend(); ++it)
    out.push_back(it->second);
  return out;
}

}  // namespace difformal
