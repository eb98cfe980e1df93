#include "sosq/bivariate.hpp"

#include <algorithm>

namespace sosq {

namespace {

// p divided by its content in Q[x]
BiPolyQ primitive_part(const BiPolyQ& p) {
  if (p.is_zero()) return p;
  return p.divided_by_x(p.content_x());
}

// Scale so that the y-leading coefficient is monic in x.
Rat normalizer(const BiPolyQ& den) {
  return 1 / den.in_y().leading_coefficient().num().leading_coefficient();
}

BiPolyQ clear_x_denominators(const PolyQx& p) {
  return BiPolyQ(p * PolyQx(RatFuncQ(x_denominator(p))));
}

}  // namespace

BiPolyQ::BiPolyQ(PolyQx p) : p_(std::move(p)) {
  for (const auto& t : p_.terms()) {
    if (!t.coeff.is_polynomial()) throw Error(Errc::NotPolynomial, "coefficient has an x-denominator");
  }
}

BiPolyQ BiPolyQ::constant(const Rat& c) { return BiPolyQ(PolyQx(RatFuncQ(c)), {}); }
BiPolyQ BiPolyQ::from_x(const PolyQ& p) { return BiPolyQ(PolyQx(RatFuncQ(p)), {}); }
BiPolyQ BiPolyQ::x() { return from_x(PolyQ::indeterminate()); }
BiPolyQ BiPolyQ::y() { return BiPolyQ(PolyQx::indeterminate(), {}); }

BiPolyQ BiPolyQ::from_monomials(const std::map<Monomial, Rat>& terms) {
  std::map<std::size_t, std::vector<PolyQ::Term>> by_y;
  for (const auto& [m, c] : terms) by_y[m.second].push_back({m.first, c});
  std::vector<PolyQx::Term> out;
  for (auto& [ey, xs] : by_y) out.push_back({ey, RatFuncQ(PolyQ::from_terms(std::move(xs)))});
  return BiPolyQ(PolyQx::from_terms(std::move(out)), {});
}

std::map<Monomial, Rat> BiPolyQ::monomials() const {
  std::map<Monomial, Rat> out;
  for (const auto& t : p_.terms()) {
    for (const auto& s : t.coeff.num().terms()) out[{s.exp, t.exp}] = s.coeff;
  }
  return out;
}

bool BiPolyQ::is_constant() const { return p_.is_constant() && p_.constant_term().is_constant(); }

std::size_t BiPolyQ::total_degree() const {
  std::size_t d = 0;
  for (const auto& t : p_.terms()) d = std::max(d, t.exp + t.coeff.num().deg());
  return d;
}

PolyQ BiPolyQ::as_univariate_x() const {
  if (depends_on_y()) throw Error(Errc::NotPolynomial, "polynomial depends on y");
  return p_.constant_term().num();
}

PolyQ BiPolyQ::content_x() const {
  PolyQ g;
  for (const auto& t : p_.terms()) {
    g = g.is_zero() ? t.coeff.num().monic() : gcd(g, t.coeff.num());
    if (g.is_constant()) break;
  }
  return g;
}

Rat BiPolyQ::eval(const Rat& x, const Rat& y) const {
  Rat acc = 0;
  for (const auto& [m, c] : monomials()) {
    Rat term = c;
    for (std::size_t i = 0; i < m.first; ++i) term *= x;
    for (std::size_t i = 0; i < m.second; ++i) term *= y;
    acc += term;
  }
  return acc;
}

BiPolyQ BiPolyQ::scaled(const Rat& c) const { return BiPolyQ(p_.scaled(RatFuncQ(c)), {}); }

BiPolyQ BiPolyQ::times_x(const PolyQ& p) const { return BiPolyQ(p_.scaled(RatFuncQ(p)), {}); }

BiPolyQ BiPolyQ::divided_by_x(const PolyQ& p) const {
  std::vector<PolyQx::Term> out;
  for (const auto& t : p_.terms()) out.push_back({t.exp, RatFuncQ(exact_div(t.coeff.num(), p))});
  return BiPolyQ(PolyQx::from_terms(std::move(out)), {});
}

PolyQ x_denominator(const PolyQx& p) {
  PolyQ d(Rat(1));
  for (const auto& t : p.terms()) {
    if (!t.coeff.is_polynomial()) d = lcm(d, t.coeff.den());
  }
  return d;
}

BiFraction to_bivariate_fraction(const RatFuncQxy& e) {
  if (e.is_zero()) return {BiPolyQ(), BiPolyQ::constant(Rat(1))};
  const PolyQ mu = x_denominator(e.num());
  const PolyQ delta = x_denominator(e.den());
  const BiPolyQ m = clear_x_denominators(e.num());
  const BiPolyQ d = clear_x_denominators(e.den());
  const PolyQ cm = m.content_x();
  const PolyQ cd = d.content_x();
  // e = (cm * delta) / (mu * cd) * prim(m) / prim(d), with prim(m), prim(d) coprime
  const RatFuncQ ratio(cm * delta, mu * cd);
  BiPolyQ num = primitive_part(m).times_x(ratio.num());
  BiPolyQ den = primitive_part(d).times_x(ratio.den());
  const Rat c = normalizer(den);
  return {num.scaled(c), den.scaled(c)};
}

RatFuncQxy from_bivariate_fraction(const BiPolyQ& num, const BiPolyQ& den) {
  if (den.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
  return RatFuncQxy(num.in_y(), den.in_y());
}

std::optional<BiPolyQ> as_bipoly(const RatFuncQxy& e) {
  if (!e.is_polynomial()) return std::nullopt;
  for (const auto& t : e.num().terms()) {
    if (!t.coeff.is_polynomial()) return std::nullopt;
  }
  return BiPolyQ(e.num());
}

bool is_bipoly(const RatFuncQxy& e) { return as_bipoly(e).has_value(); }

bool is_y_free(const RatFuncQxy& e) { return e.is_constant(); }

RatFuncQ as_x_function(const RatFuncQxy& e) {
  if (!e.is_constant()) throw Error(Errc::InvalidArgument, "element depends on y");
  return e.num().constant_term();
}

bool is_rational_constant(const RatFuncQxy& e) { return e.is_constant() && e.num().constant_term().is_constant(); }

Rat as_rational_constant(const RatFuncQxy& e) {
  if (!is_rational_constant(e)) throw Error(Errc::InvalidArgument, "element is not a rational constant");
  return e.num().constant_term().num().constant_term();
}

BiPolyQ bivariate_common_denominator(std::span<const RatFuncQxy> entries) {
  PolyQ x_part(Rat(1));
  PolyQx y_part(RatFuncQ(1));
  for (const auto& e : entries) {
    BiFraction f = to_bivariate_fraction(e);
    const PolyQ c = f.den.content_x();
    x_part = lcm(x_part, c);
    y_part = lcm(y_part, f.den.divided_by_x(c).in_y());
  }
  BiPolyQ den = primitive_part(clear_x_denominators(y_part)).times_x(x_part);
  return den.scaled(normalizer(den));
}

std::optional<Rat> eval_point(const RatFuncQxy& e, const Rat& x, const Rat& y) {
  BiFraction f = to_bivariate_fraction(e);
  Rat d = f.den.eval(x, y);
  if (is_zero(d)) return std::nullopt;
  return f.num.eval(x, y) / d;
}

}  // namespace sosq
