#include "difformal/groebner.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "difformal/errors.hpp"

namespace difformal {

namespace {

// Dense exponent vectors, index 0 = lex-largest variable; std::greater on the
// vector makes map iteration start at the leading term.
using Exps = std::vector<int>;
using GPoly = std::map<Exps, Rational, std::greater<>>;

class Ring {
 public:
  explicit Ring(const std::vector<ParamSymbol>& vars) : vars_(vars) {
    for (std::size_t i = 0; i < vars.size(); ++i) index_.emplace(vars[i], i);
  }

  GPoly to_internal(const ParamPoly& p) const {
    GPoly out;
    for (const auto& [m, c] : p.terms()) {
      Exps e(vars_.size(), 0);
      for (const auto& [s, k] : m) {
        auto it = index_.find(s);
        if (it == index_.end()) throw std::invalid_argument("symbol " + s.name() + " is not a declared variable");
        e[it->second] = k;
      }
      out.emplace(std::move(e), c);
    }
    return out;
  }

  ParamPoly to_external(const GPoly& p) const {
    ParamPoly out;
    for (const auto& [e, c] : p) {
      ParamPoly::Monomial m;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) m.emplace_back(vars_[i], e[i]);
      std::sort(m.begin(), m.end());
      out.add_term(m, c);
    }
    return out;
  }

 private:
  std::vector<ParamSymbol> vars_;
  std::map<ParamSymbol, std::size_t> index_;
};

bool divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps lcm(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

int degree(const Exps& e) {
  int d = 0;
  for (int k : e) d += k;
  return d;
}

std::size_t coefficient_bits(const Rational& c) {
  return mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
}

struct SizeGuard {
  std::size_t max_bits = SIZE_MAX;
  std::size_t max_terms = SIZE_MAX;
};

void add_scaled(GPoly& f, const GPoly& g, const Exps& shift, const Rational& coef, const SizeGuard& guard) {
  std::size_t widest = 0;
  for (const auto& [e, c] : g) {
    Exps t = e;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += shift[i];
    auto [it, inserted] = f.try_emplace(std::move(t), 0);
    it->second -= coef * c;
    if (sgn(it->second) == 0) {
      f.erase(it);
    } else {
      widest = std::max(widest, coefficient_bits(it->second));
    }
  }
  if (f.size() > guard.max_terms)
    throw ResourceLimit("Groebner polynomial exceeded " + std::to_string(guard.max_terms) + " terms");
  if (widest > guard.max_bits / std::max<std::size_t>(f.size(), 1))
    throw ResourceLimit("Groebner polynomial exceeded " + std::to_string(guard.max_bits) + " coefficient bits");
}

void make_monic(GPoly& f) {
  if (f.empty()) return;
  const Rational lc = f.begin()->second;
  if (lc == 1) return;
  for (auto& [e, c] : f) c /= lc;
}

GPoly normal_form(GPoly f, const std::vector<GPoly>& basis, const SizeGuard& guard) {
  GPoly r;
  while (!f.empty()) {
    auto lead = f.begin();
    const GPoly* divisor = nullptr;
    for (const auto& g : basis) {
      if (!g.empty() && divides(g.begin()->first, lead->first)) {
        divisor = &g;
        break;
      }
    }
    if (!divisor) {
      r.insert(f.extract(lead));
      continue;
    }
    Exps shift = lead->first;
    const Exps& lm = divisor->begin()->first;
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] -= lm[i];
    const Rational coef = lead->second / divisor->begin()->second;
    add_scaled(f, *divisor, shift, coef, guard);
  }
  return r;
}

GPoly spoly(const GPoly& f, const GPoly& g, const SizeGuard& guard) {
  const Exps& a = f.begin()->first;
  const Exps& b = g.begin()->first;
  Exps l = lcm(a, b);
  Exps sa(l.size()), sb(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    sa[i] = l[i] - a[i];
    sb[i] = l[i] - b[i];
  }
  GPoly out;
  add_scaled(out, f, sa, Rational(-1) / f.begin()->second, guard);
  add_scaled(out, g, sb, Rational(1) / g.begin()->second, guard);
  return out;
}

int total_degree(const GPoly& f) {
  int d = 0;
  for (const auto& [e, c] : f) d = std::max(d, degree(e));
  return d;
}

bool is_constant(const GPoly& f) {
  return f.size() == 1 && degree(f.begin()->first) == 0;
}

}  // namespace

GroebnerBasis buchberger(const PolySystem& sys, const SolverLimits& limits) {
  Ring ring(sys.variables);
  const SizeGuard guard{limits.max_polynomial_bits, limits.max_terms};
  GroebnerBasis out;
  out.variables = sys.variables;

  std::vector<GPoly> g;
  auto unit = [&] {
    out.polys = {ParamPoly(1)};
    return out;
  };

  for (const auto& eq : sys.equations) {
    GPoly h = normal_form(ring.to_internal(eq), g, guard);
    if (h.empty()) continue;
    make_monic(h);
    if (is_constant(h)) return unit();
    g.push_back(std::move(h));
  }

  std::set<std::pair<std::size_t, std::size_t>> pending;
  std::size_t pairs_created = 0;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      pending.emplace(i, j);
      if (++pairs_created > limits.max_pairs)
        throw ResourceLimit("Buchberger pair queue exceeded " + std::to_string(limits.max_pairs) + " pairs");
    }
  };
  for (std::size_t j = 0; j < g.size(); ++j) add_pairs(j);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    return pending.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pending.empty()) {
    // Normal selection strategy: smallest lcm by degree, then lex.
    auto best = pending.begin();
    Exps best_lcm = lcm(g[best->first].begin()->first, g[best->second].begin()->first);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exps l = lcm(g[it->first].begin()->first, g[it->second].begin()->first);
      const int dl = degree(l), db = degree(best_lcm);
      if (dl < db || (dl == db && l < best_lcm)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);

    const Exps& lmi = g[i].begin()->first;
    const Exps& lmj = g[j].begin()->first;
    bool coprime = true;
    for (std::size_t v = 0; v < lmi.size(); ++v)
      if (lmi[v] > 0 && lmj[v] > 0) coprime = false;
    if (coprime) continue;

    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (divides(g[k].begin()->first, best_lcm) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
    }
    if (chain) continue;

    GPoly h = normal_form(spoly(g[i], g[j], guard), g, guard);
    if (h.empty()) continue;
    make_monic(h);
    if (is_constant(h)) return unit();
    if (total_degree(h) > limits.max_degree)
      throw ResourceLimit("Groebner basis degree exceeded " + std::to_string(limits.max_degree));
    g.push_back(std::move(h));
    add_pairs(g.size() - 1);
  }

  // Minimal basis, then inter-reduce.
  std::vector<GPoly> minimal;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
      if (a == b) continue;
      const Exps& la = g[a].begin()->first;
      const Exps& lb = g[b].begin()->first;
      if (divides(lb, la) && (la != lb || b < a)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[a]);
  }
  std::vector<GPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<GPoly> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(minimal[b]);
    GPoly r = normal_form(minimal[a], others, guard);
    make_monic(r);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const GPoly& a, const GPoly& b) { return a.begin()->first < b.begin()->first; });
  for (const auto& r : reduced) out.polys.push_back(ring.to_external(r));
  return out;
}

ParamPoly reduce(const ParamPoly& p, const GroebnerBasis& basis) {
  Ring ring(basis.variables);
  std::vector<GPoly> g;
  for (const auto& b : basis.polys) g.push_back(ring.to_internal(b));
  return ring.to_external(normal_form(ring.to_internal(p), g, SizeGuard{}));
}

ParamPoly s_polynomial(const ParamPoly& f, const ParamPoly& g, const std::vector<ParamSymbol>& variables) {
  Ring ring(variables);
  return ring.to_external(spoly(ring.to_internal(f), ring.to_internal(g), SizeGuard{}));
}

ParamPoly::Monomial leading_monomial(const ParamPoly& p, const std::vector<ParamSymbol>& variables) {
  if (p.is_zero()) return {};
  Ring ring(variables);
  GPoly lead;
  auto internal = ring.to_internal(p);
  lead.insert(*internal.begin());
  return ring.to_external(lead).terms().begin()->first;
}

}  // namespace difformal
