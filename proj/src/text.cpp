#include "sosq/text.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace sosq {

namespace {

constexpr std::size_t kMaxExponent = 1000;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFuncQxy parse() {
    RatFuncQxy p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      fail("floating point literals are not accepted");
    }
    return Int(std::string(s_.substr(start, pos_ - start)));
  }

  RatFuncQxy expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    RatFuncQxy acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFuncQxy term() {
    RatFuncQxy acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        RatFuncQxy d = factor();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFuncQxy factor() {
    RatFuncQxy b = base();
    if (!accept('^')) return b;
    Int e = integer();
    if (e > Int(static_cast<unsigned long>(kMaxExponent))) fail("exponent too large");
    RatFuncQxy r(1);
    for (unsigned long k = e.get_ui(); k > 0; k >>= 1) {
      if (k & 1) r *= b;
      if (k > 1) b *= b;
    }
    return r;
  }

  RatFuncQxy base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == 'x' || c == 'y') {
      ++pos_;
      return to_field(c == 'x' ? BiPolyQ::x() : BiPolyQ::y());
    }
    if (c == '(') {
      ++pos_;
      RatFuncQxy inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return to_field(Rat(integer()));
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Monomial& m) {
  std::string out;
  auto var = [&](char v, std::size_t e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += v;
    if (e > 1) out += '^' + std::to_string(e);
  };
  var('x', m.first);
  var('y', m.second);
  return out;
}

}  // namespace

RatFuncQxy parse_element(std::string_view text) { return Parser(text).parse(); }

BiPolyQ parse_bipoly(std::string_view text) {
  auto p = as_bipoly(parse_element(text));
  if (!p) throw Error(Errc::ParseError, "expected a polynomial: '" + std::string(text) + "'");
  return *p;
}

RatFuncQ parse_x_function(std::string_view text) {
  RatFuncQxy e = parse_element(text);
  if (!is_y_free(e)) throw Error(Errc::ParseError, "expected a function of x only: '" + std::string(text) + "'");
  return as_x_function(e);
}

PolyQ parse_poly_x(std::string_view text) {
  BiPolyQ p = parse_bipoly(text);
  if (p.depends_on_y()) throw Error(Errc::ParseError, "expected a polynomial in x only: '" + std::string(text) + "'");
  return p.as_univariate_x();
}

Rat parse_rat(std::string_view text) {
  BiPolyQ p = parse_bipoly(text);
  if (!p.is_constant()) throw Error(Errc::ParseError, "expected a rational number: '" + std::string(text) + "'");
  return p.in_y().constant_term().num().constant_term();
}

std::string format(const Rat& c) { return c.get_str(); }

std::string format(const PolyQ& p) { return format(BiPolyQ::from_x(p)); }

std::string format(const BiPolyQ& p) {
  auto terms = p.monomials();
  if (terms.empty()) return "0";
  std::vector<std::pair<Monomial, Rat>> sorted(terms.begin(), terms.end());
  // graded lexicographic, x before y, highest first
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    std::size_t da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    const bool negative = sgn(c) < 0;
    const Rat mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

std::string format(const RatFuncQxy& e) {
  BiFraction f = to_bivariate_fraction(e);
  if (f.den == BiPolyQ::constant(Rat(1))) return format(f.num);
  return "(" + format(f.num) + ")/(" + format(f.den) + ")";
}

}  // namespace sosq
