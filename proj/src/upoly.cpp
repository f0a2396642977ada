#include "difformal/upoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "difformal/errors.hpp"

namespace difformal {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational UPoly::operator[](int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational UPoly::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * static_cast<long>(i));
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> out = coeffs_;
  const Rational lc = leading();
  for (auto& c : out) c /= lc;
  return UPoly(std::move(out));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] += b.coeffs_[i];
  }
  return UPoly(std::move(out));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] -= b.coeffs_[i];
  }
  return UPoly(std::move(out));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    Rational q = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = q;
    if (sgn(q) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b[j];
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  std::vector<UPoly> out;
  if (p.degree() < 1) return out;
  UPoly a = p.monic();
  UPoly b = a.derivative();
  UPoly c = gcd(a, b);
  UPoly w = divmod(a, c).first;
  UPoly y = divmod(b, c).first;
  UPoly z = y - w.derivative();
  while (w.degree() > 0) {
    UPoly g = gcd(w, z);
    out.push_back(g);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

namespace {

const Integer kDivisorLimit("100000000000000");

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  if (n > kDivisorLimit) throw ResourceLimit("rational root search: coefficient " + n.get_str() + " too large");
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_roots(const UPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  // Square-free part keeps the extreme coefficients small.
  auto parts = squarefree_decomposition(p);
  UPoly sf({1});
  for (const auto& f : parts) sf = sf * f;

  std::vector<Rational> c = sf.coeffs();
  std::size_t shift = 0;
  while (shift < c.size() && sgn(c[shift]) == 0) ++shift;
  if (shift > 0) roots.emplace_back(0);
  c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  if (c.size() > 1) {
    Integer lcm_den = 1;
    for (const auto& q : c) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& q : c) {
      Rational scaled = q * lcm_den;
      ints.push_back(scaled.get_num());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    for (auto& v : ints) v /= g;
    UPoly prim([&] {
      std::vector<Rational> r;
      for (const auto& v : ints) r.emplace_back(v);
      return r;
    }());
    for (const auto& num : positive_divisors(ints.front())) {
      for (const auto& den : positive_divisors(ints.back())) {
        Integer common;
        mpz_gcd(common.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (common != 1) continue;
        for (int s : {1, -1}) {
          Rational cand(num * s, den);
          cand.canonicalize();
          if (sgn(prim.eval(cand)) == 0) roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

UPoly to_upoly(const ParamPoly& p, const ParamSymbol& var) {
  std::vector<Rational> c;
  for (const auto& [m, q] : p.terms()) {
    int e = 0;
    if (!m.empty()) {
      if (m.size() != 1 || m.front().first != var)
        throw std::invalid_argument("to_upoly: polynomial is not univariate in " + var.name());
      e = m.front().second;
    }
    if (static_cast<int>(c.size()) <= e) c.resize(static_cast<std::size_t>(e) + 1);
    c[static_cast<std::size_t>(e)] += q;
  }
  return UPoly(std::move(c));
}

}  // namespace difformal
