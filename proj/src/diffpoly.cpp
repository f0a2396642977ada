#include "difformal/diffpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "difformal/errors.hpp"

namespace difformal {

DiffMonomial DiffMonomial::x_power(int a) { return {a, {}}; }

DiffMonomial DiffMonomial::y(int order, int exponent) {
  DiffMonomial m;
  if (exponent > 0) {
    m.deriv_exps.assign(static_cast<std::size_t>(order) + 1, 0);
    m.deriv_exps.back() = exponent;
  }
  return m;
}

int DiffMonomial::exponent_of(int order) const {
  if (order < 0 || order >= static_cast<int>(deriv_exps.size())) return 0;
  return deriv_exps[static_cast<std::size_t>(order)];
}

int DiffMonomial::total_degree() const {
  int d = x_exp;
  for (int e : deriv_exps) d += e;
  return d;
}

void DiffMonomial::trim() {
  while (!deriv_exps.empty() && deriv_exps.back() == 0) deriv_exps.pop_back();
}

DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b) {
  DiffMonomial out;
  out.x_exp = a.x_exp + b.x_exp;
  out.deriv_exps.assign(std::max(a.deriv_exps.size(), b.deriv_exps.size()), 0);
  for (std::size_t i = 0; i < a.deriv_exps.size(); ++i) out.deriv_exps[i] += a.deriv_exps[i];
  for (std::size_t i = 0; i < b.deriv_exps.size(); ++i) out.deriv_exps[i] += b.deriv_exps[i];
  return out;
}

std::strong_ordering lex_compare(const DiffMonomial& a, const DiffMonomial& b) {
  const int top = std::max(a.order(), b.order());
  for (int i = top; i >= 0; --i) {
    if (auto c = a.exponent_of(i) <=> b.exponent_of(i); c != 0) return c;
  }
  return a.x_exp <=> b.x_exp;
}

DiffPoly::DiffPoly(const ParamPoly& c) {
  if (!c.is_zero()) terms_.emplace(DiffMonomial{}, c);
}

DiffPoly DiffPoly::monomial(const DiffMonomial& m, const ParamPoly& c) {
  DiffPoly p;
  DiffMonomial t = m;
  t.trim();
  p.add_term(t, c);
  return p;
}

DiffPoly DiffPoly::x() { return monomial(DiffMonomial::x_power(1)); }
DiffPoly DiffPoly::y(int order) { return monomial(DiffMonomial::y(order)); }

std::optional<int> DiffPoly::order() const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, m.order());
  if (best < 0) return std::nullopt;
  return best;
}

std::pair<DiffMonomial, ParamPoly> DiffPoly::max_term() const {
  if (terms_.empty()) throw EmptyPolynomial();
  const auto& [m, c] = *terms_.rbegin();
  return {m, c};
}

void DiffPoly::add_term(const DiffMonomial& m, const ParamPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly DiffPoly::differentiate() const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.x_exp > 0) {
      DiffMonomial t = m;
      t.x_exp -= 1;
      out.add_term(t, c * ParamPoly(m.x_exp));
    }
    for (std::size_t i = 0; i < m.deriv_exps.size(); ++i) {
      const int e = m.deriv_exps[i];
      if (e == 0) continue;
      DiffMonomial t = m;
      t.deriv_exps[i] -= 1;
      if (t.deriv_exps.size() <= i + 1) t.deriv_exps.resize(i + 2, 0);
      t.deriv_exps[i + 1] += 1;
      t.trim();
      out.add_term(t, c * ParamPoly(e));
    }
  }
  return out;
}

DiffPoly DiffPoly::derivative(int times) const {
  DiffPoly out = *this;
  for (int i = 0; i < times; ++i) out = out.differentiate();
  return out;
}

DiffPoly DiffPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  DiffPoly result(1);
  DiffPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

DiffPoly DiffPoly::substitute_params(const RuleSet& rule) const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(rule));
  return out;
}

std::set<ParamSymbol> DiffPoly::parameters() const {
  std::set<ParamSymbol> out;
  for (const auto& [m, c] : terms_) {
    auto s = c.symbols();
    out.insert(s.begin(), s.end());
  }
  return out;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

DiffPoly combine(const DiffPoly& a, const DiffPoly& b, CombineOp op) {
  switch (op) {
    case CombineOp::Add: return a + b;
    case CombineOp::Sub: return a - b;
    case CombineOp::Mul: return a * b;
  }
  return {};
}

namespace {

double term_value(const DiffMonomial& m, const ParamPoly& c, const NumericPoint& pt) {
  if (!c.is_constant()) throw UnresolvedParameter(c.symbols().begin()->name());
  double v = c.constant_term().get_d() * std::pow(pt.x, m.x_exp);
  for (std::size_t i = 0; i < m.deriv_exps.size(); ++i) {
    if (m.deriv_exps[i] == 0) continue;
    if (i >= pt.y_derivs.size())
      throw std::invalid_argument("numeric point lacks derivative of order " + std::to_string(i));
    v *= std::pow(pt.y_derivs[i], m.deriv_exps[i]);
  }
  return v;
}

}  // namespace

double evaluate_numeric(const DiffPoly& p, const NumericPoint& pt) {
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) total += term_value(m, c, pt);
  return total;
}

double max_term_magnitude(const DiffPoly& p, const NumericPoint& pt) {
  double best = 0.0;
  for (const auto& [m, c] : p.terms()) best = std::max(best, std::abs(term_value(m, c, pt)));
  return best;
}

}  // namespace difformal
