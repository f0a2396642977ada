#include "difformal/param_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "difformal/errors.hpp"

namespace difformal {

std::string to_string(const Rational& q) { return q.get_str(); }

ParamSymbol ParamSymbol::w(int j, int sigma) { return {ParamKind::W, 2, {j, sigma, 0}}; }
ParamSymbol ParamSymbol::w(int j, int sigma, int mu) { return {ParamKind::W, 3, {j, sigma, mu}}; }
ParamSymbol ParamSymbol::v(int d) { return {ParamKind::V, 1, {d, 0, 0}}; }
ParamSymbol ParamSymbol::v(int d, int sigma, int mu) { return {ParamKind::V, 3, {d, sigma, mu}}; }

std::string ParamSymbol::name() const {
  std::string s = kind == ParamKind::W ? "W[" : "V[";
  for (int i = 0; i < arity; ++i) {
    if (i) s += ',';
    s += std::to_string(idx[static_cast<std::size_t>(i)]);
  }
  return s + ']';
}

ParamPoly::ParamPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

ParamPoly ParamPoly::symbol(const ParamSymbol& s) { return term({{s, 1}}, 1); }

ParamPoly ParamPoly::term(const Monomial& m, const Rational& c) {
  ParamPoly p;
  p.add_term(m, c);
  return p;
}

bool ParamPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational ParamPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<ParamSymbol> ParamPoly::symbols() const {
  std::set<ParamSymbol> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [s, e] : m) out.insert(s);
  return out;
}

int ParamPoly::degree_in(const ParamSymbol& s) const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [t, e] : m)
      if (t == s) d = std::max(d, e);
  return d;
}

int ParamPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

ParamPoly ParamPoly::coefficient_of(const ParamSymbol& s, int e) const {
  ParamPoly out;
  for (const auto& [m, c] : terms_) {
    int have = 0;
    Monomial rest;
    for (const auto& [t, k] : m) {
      if (t == s)
        have = k;
      else
        rest.emplace_back(t, k);
    }
    if (have == e) out.add_term(rest, c);
  }
  return out;
}

void ParamPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

ParamPoly ParamPoly::substitute(const RuleSet& rule) const {
  if (rule.assignments.empty()) return *this;
  ParamPoly out;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    Monomial rest;
    for (const auto& [s, e] : m) {
      auto it = rule.assignments.find(s);
      if (it == rule.assignments.end()) {
        rest.emplace_back(s, e);
        continue;
      }
      Rational v;
      mpz_pow_ui(v.get_num_mpz_t(), it->second.get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(v.get_den_mpz_t(), it->second.get_den_mpz_t(), static_cast<unsigned long>(e));
      coeff *= v;
    }
    out.add_term(rest, coeff);
  }
  return out;
}

double ParamPoly::evaluate(const std::map<ParamSymbol, double>& values) const {
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (const auto& [s, e] : m) {
      auto it = values.find(s);
      if (it == values.end()) throw UnresolvedParameter(s.name());
      t *= std::pow(it->second, e);
    }
    total += t;
  }
  return total;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o) { return *this = *this * o; }

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
  return out;
}

ParamPoly::Monomial monomial_product(const ParamPoly::Monomial& a, const ParamPoly::Monomial& b) {
  ParamPoly::Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

int monomial_degree(const ParamPoly::Monomial& m) {
  int d = 0;
  for (const auto& [s, e] : m) d += e;
  return d;
}

ParamPoly combine(const ParamPoly& a, const ParamPoly& b, CombineOp op) {
  switch (op) {
    case CombineOp::Add: return a + b;
    case CombineOp::Sub: return a - b;
    case CombineOp::Mul: return a * b;
  }
  return {};
}

std::string to_string(const ParamPoly::Monomial& m) {
  std::string s;
  for (const auto& [sym, e] : m) {
    if (!s.empty()) s += '*';
    s += sym.name();
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

std::string to_string(const ParamPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<ParamPoly::Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return monomial_degree(a.first) > monomial_degree(b.first);
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (m.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + '*';
      out += to_string(m);
    }
  }
  return out;
}

std::string to_string(const RuleSet& r) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  std::set<ParamSymbol> all = r.free;
  for (const auto& [s, v] : r.assignments) all.insert(s);
  for (const auto& s : all) {
    if (!first) os << ", ";
    first = false;
    os << s.name() << " = ";
    auto it = r.assignments.find(s);
    if (it != r.assignments.end())
      os << to_string(it->second);
    else
      os << "free";
  }
  os << '}';
  return os.str();
}

}  // namespace difformal
