#include "difformal/parser.hpp"

#include <cctype>
#include <vector>

#include "difformal/errors.hpp"

namespace difformal {

namespace {

constexpr int kMaxExponent = 1000;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  DiffPoly parse() {
    DiffPoly p = expr();
    skip_ws();
    if (pos_ < src_.size()) throw SyntaxError(pos_, std::string("unexpected '") + src_[pos_] + "'");
    return p;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= src_.size()) throw SyntaxError(pos_, std::string("expected '") + c + "' before end of input");
      throw SyntaxError(pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  Integer digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(start, "expected an integer");
    return Integer(std::string(src_.substr(start, pos_ - start)), 10);
  }

  DiffPoly expr() {
    DiffPoly acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  DiffPoly term() {
    DiffPoly acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  DiffPoly factor() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    DiffPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      return base.pow(exponent());
    }
    return base;
  }

  int exponent() {
    const std::size_t at = (skip_ws(), pos_);
    bool parens = false;
    if (peek() == '(') {
      ++pos_;
      parens = true;
    }
    char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '\0') throw SyntaxError(pos_, "missing exponent");
      throw UnsupportedError(at, "exponents must be positive integers");
    }
    Integer e = digits();
    if (peek() == '.' || peek() == '/') throw UnsupportedError(at, "exponents must be positive integers");
    if (parens) expect(')');
    if (e == 0) throw UnsupportedError(at, "exponents must be positive integers");
    if (e > kMaxExponent) throw UnsupportedError(at, "exponent too large");
    return static_cast<int>(e.get_si());
  }

  DiffPoly primary() {
    char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      DiffPoly inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (c == '.') throw UnsupportedError(at, "decimal literals are not supported; write a/b");
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      std::string_view name = src_.substr(pos_, end - pos_);
      if (name == "x") {
        pos_ = end;
        return DiffPoly::x();
      }
      if (name == "y") {
        pos_ = end;
        return y_atom();
      }
      throw UnsupportedError(at, "unknown identifier '" + std::string(name) + "'");
    }
    if (c == '\0') throw SyntaxError(pos_, "unexpected end of input");
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  // Called right after the letter y.
  DiffPoly y_atom() {
    int order = 0;
    while (pos_ < src_.size() && src_[pos_] == '\'') {
      ++order;
      ++pos_;
    }
    if (order == 0) {
      // y^(n) is derivative notation; y^n is a power and handled by factor().
      std::size_t look = pos_;
      auto skip = [&] {
        while (look < src_.size() && std::isspace(static_cast<unsigned char>(src_[look]))) ++look;
      };
      skip();
      if (look < src_.size() && src_[look] == '^') {
        ++look;
        skip();
        if (look < src_.size() && src_[look] == '(') {
          pos_ = look + 1;
          const std::size_t at = pos_;
          if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw UnsupportedError(at, "derivative order must be a non-negative integer");
          Integer n = digits();
          expect(')');
          if (n > kMaxExponent) throw UnsupportedError(at, "derivative order too large");
          order = static_cast<int>(n.get_si());
        }
      }
    }
    return DiffPoly::y(order);
  }

  DiffPoly rational() {
    const std::size_t at = pos_;
    Integer num = digits();
    if (pos_ < src_.size() && src_[pos_] == '.')
      throw UnsupportedError(at, "decimal literals are not supported; write a/b");
    if (peek() == '/') {
      ++pos_;
      Integer den = digits();
      if (den == 0) throw SyntaxError(at, "zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return DiffPoly(ParamPoly(q));
    }
    return DiffPoly(ParamPoly(Rational(num)));
  }
};

struct SignedPiece {
  bool negative = false;
  std::string body;
};

std::string join(const std::vector<SignedPiece>& pieces) {
  if (pieces.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0)
      out += pieces[i].negative ? "-" : "";
    else
      out += pieces[i].negative ? " - " : " + ";
    out += pieces[i].body;
  }
  return out;
}

std::string x_factor(int a) {
  if (a == 0) return "";
  return a == 1 ? "x" : "x^" + std::to_string(a);
}

std::string y_factor(const DiffMonomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.deriv_exps.size(); ++i) {
    const int e = m.deriv_exps[i];
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    std::string atom = derivative_name(static_cast<int>(i));
    if (e == 1)
      s += atom;
    else if (i == 0)
      s += atom + '^' + std::to_string(e);
    else
      s += '(' + atom + ")^" + std::to_string(e);
  }
  return s;
}

std::string product(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += '*';
    s += p;
  }
  return s;
}

/// coefficient * rest, where rest is an already rendered x/y product (may be empty).
SignedPiece scaled(const ParamPoly& c, const std::string& rest) {
  if (c.terms().size() == 1) {
    const auto& [m, r] = *c.terms().begin();
    Rational mag = abs(r);
    std::string num = (mag == 1 && !(m.empty() && rest.empty())) ? "" : to_string(mag);
    return {sgn(r) < 0, product({num, to_string(m), rest})};
  }
  return {false, product({'(' + to_string(c) + ')', rest})};
}

}  // namespace

std::string derivative_name(int order) {
  if (order <= 4) return "y" + std::string(static_cast<std::size_t>(order), '\'');
  return "y^(" + std::to_string(order) + ")";
}

DiffPoly parse_diffpoly(std::string_view src) { return Parser(src).parse(); }

std::string format_diffpoly(const DiffPoly& p) {
  std::vector<SignedPiece> pieces;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend();) {
    // Monomials sharing the y-part are adjacent in lex order.
    auto group_end = it;
    std::vector<std::pair<int, ParamPoly>> xs;
    while (group_end != terms.rend() && group_end->first.deriv_exps == it->first.deriv_exps) {
      xs.emplace_back(group_end->first.x_exp, group_end->second);
      ++group_end;
    }
    const std::string ys = y_factor(it->first);
    if (xs.size() == 1 || ys.empty()) {
      for (const auto& [a, c] : xs) pieces.push_back(scaled(c, product({x_factor(a), ys})));
    } else {
      std::vector<SignedPiece> inner;
      for (const auto& [a, c] : xs) inner.push_back(scaled(c, x_factor(a)));
      pieces.push_back({false, '(' + join(inner) + ")*" + ys});
    }
    it = group_end;
  }
  return join(pieces);
}

}  // namespace difformal
