#include "difformal/ode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "difformal/errors.hpp"
#include "difformal/parser.hpp"

namespace difformal {

namespace {

long combine_radicand(const QuadNumber& x, const QuadNumber& y) {
  if (x.is_rational()) return y.d;
  if (y.is_rational()) return x.d;
  if (x.d != y.d) throw std::logic_error("QuadNumber: mixed radicands");
  return x.d;
}

QuadNumber normalized(QuadNumber q) {
  if (sgn(q.b) == 0) q.d = 0;
  return q;
}

Numeric to_numeric(const Rational& q) {
  return Numeric(q.get_num().get_str()) / Numeric(q.get_den().get_str());
}

Rational factorial_ratio(int hi, int lo) {  // hi! / lo!
  Rational r = 1;
  for (int i = lo + 1; i <= hi; ++i) r *= i;
  return r;
}

}  // namespace

NumericComplex QuadNumber::approx() const {
  Numeric re = to_numeric(a);
  if (is_rational()) return NumericComplex(re);
  Numeric root = sqrt(Numeric(std::abs(d)));
  if (d > 0) return NumericComplex(re + to_numeric(b) * root);
  return NumericComplex(re, to_numeric(b) * root);
}

QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) {
  return normalized({x.a + y.a, x.b + y.b, combine_radicand(x, y)});
}

QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) {
  return normalized({x.a - y.a, x.b - y.b, combine_radicand(x, y)});
}

QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
  const long d = combine_radicand(x, y);
  return normalized({x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d});
}

bool operator==(const QuadNumber& x, const QuadNumber& y) {
  return x.a == y.a && x.b == y.b && (sgn(x.b) == 0 || x.d == y.d);
}

LinearOde LinearOde::from_factor(const DiffPoly& linear) {
  auto order = linear.order();
  if (!order) throw std::invalid_argument("linear factor must involve y");
  LinearOde ode;
  ode.order = *order;
  ode.y_coeffs.assign(static_cast<std::size_t>(*order), ParamPoly());
  for (const auto& [m, c] : linear.terms()) {
    if (m.deriv_exps.empty()) {
      if (static_cast<int>(ode.forcing.size()) <= m.x_exp) ode.forcing.resize(static_cast<std::size_t>(m.x_exp) + 1);
      ode.forcing[static_cast<std::size_t>(m.x_exp)] = -c;
      continue;
    }
    if (m.x_exp != 0 || m.deriv_exps.back() != 1 ||
        std::count_if(m.deriv_exps.begin(), m.deriv_exps.end(), [](int e) { return e != 0; }) != 1)
      throw std::invalid_argument("factor is not linear with constant coefficients");
    const int j = m.order();
    if (j == *order) {
      if (!(c == ParamPoly(1))) throw std::invalid_argument("factor is not monic in its leader");
    } else {
      ode.y_coeffs[static_cast<std::size_t>(j)] = c;
    }
  }
  return ode;
}

DiffPoly LinearOde::as_diffpoly() const {
  DiffPoly out = DiffPoly::y(order);
  for (std::size_t j = 0; j < y_coeffs.size(); ++j)
    out.add_term(DiffMonomial::y(static_cast<int>(j)), y_coeffs[j]);
  for (std::size_t i = 0; i < forcing.size(); ++i)
    out.add_term(DiffMonomial::x_power(static_cast<int>(i)), -forcing[i]);
  return out;
}

bool LinearOde::has_rational_coefficients() const {
  return std::all_of(y_coeffs.begin(), y_coeffs.end(), [](const ParamPoly& c) { return c.is_constant(); });
}

UPoly LinearOde::characteristic_polynomial() const {
  if (!has_rational_coefficients()) throw std::invalid_argument("characteristic polynomial needs rational coefficients");
  std::vector<Rational> c;
  for (const auto& a : y_coeffs) c.push_back(a.constant_term());
  c.emplace_back(1);
  return UPoly(std::move(c));
}

bool CharRoot::is_real() const {
  if (exact) return exact->is_real();
  return value.imag() == 0;
}

namespace {

/// Split |n| = s^2 * f with f square-free (best effort past 10^6).
std::pair<Integer, Integer> square_split(Integer n) {
  Integer s = 1, f = 1;
  for (long p = 2; p <= 1000000 && Integer(p) * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      f *= p;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    s *= r;
  } else {
    f *= n;
  }
  return {s, f};
}

void quadratic_roots(const UPoly& monic_quadratic, int multiplicity, std::vector<CharRoot>& out) {
  const Rational p = monic_quadratic[1], q = monic_quadratic[0];
  Rational disc = p * p - 4 * q;
  Integer nd = disc.get_num() * disc.get_den();
  const int sign = sgn(nd);
  if (sign < 0) nd = -nd;
  auto [s, f] = square_split(nd);
  if (!f.fits_slong_p()) throw ResourceLimit("radicand too large for exact surd");
  const long radicand = sign * f.get_si();
  Rational half_b(s, 2 * disc.get_den());
  half_b.canonicalize();
  const Rational a = -p / 2;
  QuadNumber plus{a, half_b, radicand};
  QuadNumber minus{a, -half_b, radicand};
  out.push_back({plus, plus.approx(), multiplicity});
  out.push_back({minus, minus.approx(), multiplicity});
}

void aberth_roots(const UPoly& f, int multiplicity, int digits, std::vector<CharRoot>& out) {
  const int n = f.degree();
  std::vector<NumericComplex> c;
  for (int i = 0; i <= n; ++i) c.emplace_back(to_numeric(f[i]));
  auto eval = [&](const NumericComplex& z, NumericComplex& dp) {
    NumericComplex p = c[static_cast<std::size_t>(n)];
    dp = NumericComplex(0);
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[static_cast<std::size_t>(i)];
    }
    return p;
  };

  Numeric radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, Numeric(abs(c[static_cast<std::size_t>(i)] / c.back())));
  radius += 1;
  const Numeric two_pi = 2 * boost::math::constants::pi<Numeric>();
  std::vector<NumericComplex> z;
  for (int k = 0; k < n; ++k) {
    Numeric theta = two_pi * k / n + Numeric("0.7");
    z.emplace_back(radius * cos(theta), radius * sin(theta));
  }
  const Numeric tol = pow(Numeric(10), -std::min(digits + 10, 45));
  for (int iter = 0; iter < 5000; ++iter) {
    Numeric worst = 0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      NumericComplex dp;
      NumericComplex p = eval(zk, dp);
      if (abs(p) == 0) continue;
      NumericComplex ratio = p / dp;
      NumericComplex sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k) sum += NumericComplex(1) / (zk - z[static_cast<std::size_t>(j)]);
      NumericComplex w = ratio / (NumericComplex(1) - ratio * sum);
      zk -= w;
      worst = std::max(worst, Numeric(abs(w) / std::max(Numeric(1), Numeric(abs(zk)))));
    }
    if (worst < tol) break;
  }

  const Numeric real_tol = pow(Numeric(10), -digits);
  std::vector<NumericComplex> reals, uppers;
  for (auto& zk : z) {
    if (abs(zk.imag()) <= real_tol * std::max(Numeric(1), Numeric(abs(zk))))
      reals.emplace_back(zk.real());
    else if (zk.imag() > 0)
      uppers.push_back(zk);
  }
  std::sort(reals.begin(), reals.end(), [](const auto& x, const auto& y) { return x.real() < y.real(); });
  std::sort(uppers.begin(), uppers.end(), [](const auto& x, const auto& y) {
    return std::make_tuple(x.real(), x.imag()) < std::make_tuple(y.real(), y.imag());
  });
  if (static_cast<int>(reals.size() + 2 * uppers.size()) != n) {
    for (const auto& zk : z) out.push_back({std::nullopt, zk, multiplicity});
    return;
  }
  for (const auto& r : reals) out.push_back({std::nullopt, r, multiplicity});
  for (const auto& u : uppers) {
    out.push_back({std::nullopt, u, multiplicity});
    out.push_back({std::nullopt, NumericComplex(u.real(), -u.imag()), multiplicity});
  }
}

}  // namespace

std::vector<CharRoot> polynomial_roots(const UPoly& p, int digits) {
  std::vector<CharRoot> out;
  if (p.degree() < 1) return out;
  UPoly rest = p;
  for (const auto& r : rational_roots(p)) {
    UPoly lin({-r, 1});
    int mult = 0;
    for (;;) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = q;
      ++mult;
    }
    auto exact = QuadNumber::rational(r);
    out.push_back({exact, exact.approx(), mult});
  }
  auto parts = squarefree_decomposition(rest);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const UPoly& f = parts[i];
    const int mult = static_cast<int>(i) + 1;
    if (f.degree() == 1) {
      auto exact = QuadNumber::rational(-f[0] / f[1]);
      out.push_back({exact, exact.approx(), mult});
    } else if (f.degree() == 2) {
      quadratic_roots(f.monic(), mult, out);
    } else if (f.degree() >= 3) {
      aberth_roots(f, mult, digits, out);
    }
  }
  return out;
}

std::vector<CharRoot> characteristic_roots(const LinearOde& ode, int digits) {
  if (ode.order < 1) throw std::invalid_argument("characteristic_roots: order must be >= 1");
  return polynomial_roots(ode.characteristic_polynomial(), digits);
}

int GeneralSolution::constant_count() const {
  if (unsolved) return order;
  return static_cast<int>(homogeneous.size() + folded.size());
}

bool GeneralSolution::exact_rates() const {
  if (unsolved) return false;
  return std::all_of(homogeneous.begin(), homogeneous.end(),
                     [](const HomogeneousTerm& t) { return t.root.exact.has_value(); });
}

GeneralSolution general_solution(const LinearOde& ode, int digits) {
  GeneralSolution sol;
  sol.order = ode.order;
  if (ode.order == 0) {
    sol.particular = ode.forcing;
    return sol;
  }
  if (!ode.has_rational_coefficients()) {
    sol.unsolved = ode;
    return sol;
  }

  int constant = 0;
  for (const auto& root : characteristic_roots(ode, digits)) {
    const bool real = root.is_real();
    if (!real && root.value.imag() < 0) continue;
    for (int m = 0; m < root.multiplicity; ++m) {
      if (real) {
        sol.homogeneous.push_back({constant++, m, root, Oscillation::None});
      } else {
        sol.homogeneous.push_back({constant++, m, root, Oscillation::Cos});
        sol.homogeneous.push_back({constant++, m, root, Oscillation::Sin});
      }
    }
  }

  // Undetermined coefficients on z = y^(m0), m0 = multiplicity of the zero root.
  std::vector<Rational> a;
  for (const auto& c : ode.y_coeffs) a.push_back(c.constant_term());
  a.emplace_back(1);
  int m0 = 0;
  while (sgn(a[static_cast<std::size_t>(m0)]) == 0) ++m0;
  const int span = ode.order - m0;
  const int deg = static_cast<int>(ode.forcing.size()) - 1;
  std::vector<ParamPoly> z(static_cast<std::size_t>(std::max(deg + 1, 0)));
  const Rational b0 = a[static_cast<std::size_t>(m0)];
  for (int t = deg; t >= 0; --t) {
    ParamPoly acc = ode.forcing[static_cast<std::size_t>(t)];
    for (int i = 1; i <= span && t + i <= deg; ++i)
      acc -= z[static_cast<std::size_t>(t + i)] *
             ParamPoly(a[static_cast<std::size_t>(m0 + i)] * factorial_ratio(t + i, t));
    z[static_cast<std::size_t>(t)] = acc * ParamPoly(Rational(1) / b0);
  }
  if (deg >= 0) {
    sol.particular.assign(static_cast<std::size_t>(deg + m0 + 1), ParamPoly());
    for (int t = 0; t <= deg; ++t)
      sol.particular[static_cast<std::size_t>(t + m0)] =
          z[static_cast<std::size_t>(t)] * ParamPoly(Rational(1) / factorial_ratio(t + m0, t));
  }
  while (!sol.particular.empty() && sol.particular.back().is_zero()) sol.particular.pop_back();
  return sol;
}

namespace {

bool is_monomial(const UPoly& q) {
  return std::count_if(q.coeffs().begin(), q.coeffs().end(), [](const Rational& r) { return sgn(r) != 0; }) == 1;
}

std::set<int> occupied_powers(const GeneralSolution& sol) {
  std::set<int> out;
  for (const auto& h : sol.homogeneous)
    if (h.root.is_zero()) out.insert(h.x_power);
  for (const auto& f : sol.folded)
    if (is_monomial(f.shape)) out.insert(f.shape.degree());
  return out;
}

}  // namespace

GeneralSolution fold_free_parameters(GeneralSolution sol, const std::set<ParamSymbol>& free) {
  if (sol.unsolved) {
    for (const auto& c : sol.unsolved->y_coeffs)
      for (const auto& s : c.symbols())
        if (free.count(s)) sol.retained.insert(s);
    for (const auto& c : sol.unsolved->forcing)
      for (const auto& s : c.symbols())
        if (free.count(s)) sol.retained.insert(s);
    return sol;
  }
  int next_constant = sol.constant_count();
  for (const auto& s : free) {
    bool present = false, affine = true;
    std::vector<Rational> shape(sol.particular.size());
    for (std::size_t i = 0; i < sol.particular.size(); ++i) {
      const ParamPoly& c = sol.particular[i];
      const int deg = c.degree_in(s);
      if (deg == 0) continue;
      present = true;
      ParamPoly lin = c.coefficient_of(s, 1);
      if (deg > 1 || !lin.is_constant()) affine = false;
      else shape[i] = lin.constant_term();
    }
    if (!present) continue;
    if (!affine) {
      sol.retained.insert(s);
      continue;
    }
    for (auto& c : sol.particular) c = c.coefficient_of(s, 0);
    UPoly q(shape);
    if (is_monomial(q)) {
      if (occupied_powers(sol).count(q.degree())) continue;
      std::vector<Rational> mono(static_cast<std::size_t>(q.degree()) + 1);
      mono.back() = 1;
      sol.folded.push_back({next_constant++, UPoly(std::move(mono))});
    } else {
      sol.folded.push_back({next_constant++, q});
    }
  }
  for (int j : occupied_powers(sol))
    if (j < static_cast<int>(sol.particular.size())) sol.particular[static_cast<std::size_t>(j)] = ParamPoly();
  while (!sol.particular.empty() && sol.particular.back().is_zero()) sol.particular.pop_back();
  return sol;
}

namespace {

std::string numeric_text(const Numeric& v) {
  std::ostringstream os;
  os << '~' << std::setprecision(20) << v;
  return os.str();
}

std::string surd_text(const QuadNumber& q) {
  if (q.is_rational()) return to_string(q.a);
  const std::string root = "sqrt(" + std::to_string(q.d) + ")";
  std::string bpart;
  Rational mag = abs(q.b);
  bpart = mag == 1 ? root : to_string(mag) + "*" + root;
  if (sgn(q.a) == 0) return (sgn(q.b) < 0 ? "-" : "") + bpart;
  return "(" + to_string(q.a) + (sgn(q.b) < 0 ? " - " : " + ") + bpart + ")";
}

/// "x", "-x", "2*x", "sqrt(2)*x", "(1 + sqrt(2))*x".
std::string times_x(const std::string& coeff) {
  if (coeff == "1") return "x";
  if (coeff == "-1") return "-x";
  return coeff + "*x";
}

struct RateParts {
  std::string rate;  // empty when zero
  std::string freq;  // empty when real
  double rate_value = 0, freq_value = 0;
};

RateParts rate_parts(const CharRoot& r) {
  RateParts out;
  if (r.exact) {
    const QuadNumber& q = *r.exact;
    if (q.is_real()) {
      if (!q.is_zero()) out.rate = surd_text(q);
    } else {
      if (sgn(q.a) != 0) out.rate = to_string(q.a);
      QuadNumber beta = q.d == -1 ? QuadNumber{abs(q.b), 0, 0} : QuadNumber{0, abs(q.b), -q.d};
      out.freq = surd_text(beta);
    }
  } else {
    if (abs(r.value.real()) > Numeric("1e-40")) out.rate = numeric_text(r.value.real());
    if (r.value.imag() != 0) out.freq = numeric_text(abs(r.value.imag()));
  }
  out.rate_value = r.value.real().convert_to<double>();
  out.freq_value = std::abs(r.value.imag().convert_to<double>());
  return out;
}

std::string x_power_text(int m) {
  if (m == 0) return "";
  return m == 1 ? "x" : "x^" + std::to_string(m);
}

std::string join_product(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += '*';
    s += p;
  }
  return s;
}

std::string upoly_text(const UPoly& q) {
  std::string out;
  for (int i = q.degree(); i >= 0; --i) {
    const Rational c = q[i];
    if (sgn(c) == 0) continue;
    const Rational mag = abs(c);
    std::string body = join_product({(mag == 1 && i > 0) ? "" : to_string(mag), x_power_text(i)});
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + body;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

struct Item {
  bool constant = false;
  bool negative = false;
  std::string body;
};

}  // namespace

std::string format_solution(const GeneralSolution& sol) {
  if (sol.unsolved) return "y: " + format_diffpoly(sol.unsolved->as_diffpoly()) + " = 0";

  std::vector<Item> items;
  std::vector<std::pair<std::tuple<double, double, int, int>, Item>> waves;
  for (const auto& h : sol.homogeneous) {
    if (h.root.is_zero()) continue;
    RateParts rp = rate_parts(h.root);
    std::vector<std::string> parts{x_power_text(h.x_power)};
    if (!rp.rate.empty()) parts.push_back("exp(" + times_x(rp.rate) + ")");
    if (h.osc == Oscillation::Cos) parts.push_back("cos(" + times_x(rp.freq) + ")");
    if (h.osc == Oscillation::Sin) parts.push_back("sin(" + times_x(rp.freq) + ")");
    waves.push_back({{rp.rate_value, rp.freq_value, h.x_power, static_cast<int>(h.osc)},
                     Item{true, false, join_product(parts)}});
  }
  std::stable_sort(waves.begin(), waves.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& w : waves) items.push_back(std::move(w.second));

  std::set<int> slots;
  for (const auto& h : sol.homogeneous)
    if (h.root.is_zero()) slots.insert(h.x_power);
  for (const auto& f : sol.folded) {
    if (is_monomial(f.shape))
      slots.insert(f.shape.degree());
    else
      items.push_back({true, false, "(" + upoly_text(f.shape) + ")"});
  }

  int top = static_cast<int>(sol.particular.size()) - 1;
  if (!slots.empty()) top = std::max(top, *slots.rbegin());
  for (int j = top; j >= 0; --j) {
    if (slots.count(j)) {
      items.push_back({true, false, x_power_text(j)});
      continue;
    }
    if (j >= static_cast<int>(sol.particular.size())) continue;
    const ParamPoly& c = sol.particular[static_cast<std::size_t>(j)];
    if (c.is_zero()) continue;
    const std::string xs = x_power_text(j);
    if (c.terms().size() == 1) {
      const auto& [m, r] = *c.terms().begin();
      const Rational mag = abs(r);
      const bool bare = m.empty() && xs.empty();
      items.push_back({false, sgn(r) < 0,
                       join_product({(mag == 1 && !bare) ? "" : to_string(mag), to_string(m), xs})});
    } else {
      items.push_back({false, false, join_product({"(" + to_string(c) + ")", xs})});
    }
  }

  if (items.empty()) return "0";
  const auto n_constants = std::count_if(items.begin(), items.end(), [](const Item& i) { return i.constant; });
  std::string out;
  int label = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& it = items[i];
    std::string body = it.body;
    if (it.constant) {
      const std::string name = n_constants == 1 ? "c" : "c" + std::to_string(++label);
      body = join_product({name, body});
    }
    if (i == 0)
      out += it.negative ? "-" : "";
    else
      out += it.negative ? " - " : " + ";
    out += body;
  }
  return out;
}

namespace {

using QPoly = std::vector<QuadNumber>;

QPoly apply_shifted_derivative(const QPoly& g, const QuadNumber& lambda) {
  QPoly out(g.size(), QuadNumber::rational(0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = out[i] + lambda * g[i];
    if (i > 0) out[i - 1] = out[i - 1] + QuadNumber::rational(static_cast<long>(i)) * g[i];
  }
  return out;
}

std::vector<ParamPoly> poly_derivative(const std::vector<ParamPoly>& p) {
  std::vector<ParamPoly> out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * ParamPoly(static_cast<long>(i)));
  return out;
}

}  // namespace

std::optional<bool> check_exact(const LinearOde& ode, const GeneralSolution& sol) {
  if (sol.unsolved || !sol.folded.empty() || !ode.has_rational_coefficients()) return std::nullopt;
  if (!sol.exact_rates()) return std::nullopt;
  std::vector<Rational> a;
  for (const auto& c : ode.y_coeffs) a.push_back(c.constant_term());
  a.emplace_back(1);

  for (const auto& h : sol.homogeneous) {
    const QuadNumber& lambda = *h.root.exact;
    QPoly cur(static_cast<std::size_t>(h.x_power) + 1, QuadNumber::rational(0));
    cur.back() = QuadNumber::rational(1);
    QPoly acc(cur.size(), QuadNumber::rational(0));
    for (int j = 0; j <= ode.order; ++j) {
      for (std::size_t i = 0; i < cur.size(); ++i)
        acc[i] = acc[i] + QuadNumber::rational(a[static_cast<std::size_t>(j)]) * cur[i];
      cur = apply_shifted_derivative(cur, lambda);
    }
    for (const auto& c : acc)
      if (!c.is_zero()) return false;
  }

  std::vector<ParamPoly> total(std::max(sol.particular.size(), ode.forcing.size()));
  std::vector<ParamPoly> cur = sol.particular;
  for (int j = 0; j <= ode.order; ++j) {
    for (std::size_t i = 0; i < cur.size(); ++i) total[i] += cur[i] * ParamPoly(a[static_cast<std::size_t>(j)]);
    cur = poly_derivative(cur);
  }
  for (std::size_t i = 0; i < ode.forcing.size(); ++i) total[i] -= ode.forcing[i];
  return std::all_of(total.begin(), total.end(), [](const ParamPoly& c) { return c.is_zero(); });
}

std::vector<double> evaluate_solution(const GeneralSolution& sol, double x, const std::vector<double>& constants,
                                      const std::map<ParamSymbol, double>& params, int max_order) {
  if (sol.unsolved) throw std::invalid_argument("evaluate_solution: family has no closed form");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);

  for (const auto& h : sol.homogeneous) {
    const double c = constants.at(static_cast<std::size_t>(h.constant));
    const std::complex<double> lambda(h.root.value.real().convert_to<double>(),
                                      std::abs(h.root.value.imag().convert_to<double>()));
    const std::complex<double> e = std::exp(lambda * x);
    const int m = h.x_power;
    for (int n = 0; n <= max_order; ++n) {
      // D^n [x^m e^{lambda x}] = e^{lambda x} sum_j C(n,j) m!/(m-j)! x^{m-j} lambda^{n-j}
      std::complex<double> s = 0.0;
      double binom = 1.0;
      for (int j = 0; j <= std::min(n, m); ++j) {
        double falling = 1.0;
        for (int t = 0; t < j; ++t) falling *= m - t;
        s += binom * falling * std::pow(x, m - j) * std::pow(lambda, n - j);
        binom = binom * (n - j) / (j + 1);
      }
      const std::complex<double> v = e * s;
      out[static_cast<std::size_t>(n)] += c * (h.osc == Oscillation::Sin ? v.imag() : v.real());
    }
  }

  auto add_poly = [&](std::vector<double> coeffs, double scale) {
    for (int n = 0; n <= max_order; ++n) {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
      out[static_cast<std::size_t>(n)] += scale * v;
      for (std::size_t i = 1; i < coeffs.size(); ++i) coeffs[i - 1] = coeffs[i] * static_cast<double>(i);
      if (!coeffs.empty()) coeffs.pop_back();
    }
  };
  std::vector<double> particular;
  for (const auto& c : sol.particular) particular.push_back(c.evaluate(params));
  add_poly(particular, 1.0);
  for (const auto& f : sol.folded) {
    std::vector<double> shape;
    for (const auto& q : f.shape.coeffs()) shape.push_back(q.get_d());
    add_poly(shape, constants.at(static_cast<std::size_t>(f.constant)));
  }
  return out;
}

}  // namespace difformal
