#pragma once

// Elements of Q[x,y], stored as polynomials in y over Q(x) whose coefficients
// all have denominator 1, and conversions between Q(x)(y) and reduced
// fractions of such polynomials.

#include <map>
#include <optional>
#include <span>
#include <utility>

#include "sosq/poly.hpp"

namespace sosq {

using Monomial = std::pair<std::size_t, std::size_t>;  // (x exponent, y exponent)

class BiPolyQ {
 public:
  BiPolyQ() = default;
  // Throws NotPolynomial if a coefficient has a nontrivial x-denominator.
  explicit BiPolyQ(PolyQx p);

  static BiPolyQ constant(const Rat& c);
  static BiPolyQ from_x(const PolyQ& p);
  static BiPolyQ from_monomials(const std::map<Monomial, Rat>& terms);
  static BiPolyQ x();
  static BiPolyQ y();

  const PolyQx& in_y() const { return p_; }
  std::map<Monomial, Rat> monomials() const;

  bool is_zero() const { return p_.is_zero(); }
  bool is_constant() const;
  bool depends_on_y() const { return !p_.is_constant(); }
  Degree degree_y() const { return p_.degree(); }
  std::size_t total_degree() const;

  // Throws NotPolynomial when the polynomial involves y.
  PolyQ as_univariate_x() const;

  // monic gcd in Q[x] of the y-coefficients; zero for the zero polynomial
  PolyQ content_x() const;

  Rat eval(const Rat& x, const Rat& y) const;

  BiPolyQ scaled(const Rat& c) const;
  BiPolyQ times_x(const PolyQ& p) const;
  // Exact division by a polynomial in x alone.
  BiPolyQ divided_by_x(const PolyQ& p) const;

  friend BiPolyQ operator+(const BiPolyQ& a, const BiPolyQ& b) { return BiPolyQ(a.p_ + b.p_, {}); }
  friend BiPolyQ operator-(const BiPolyQ& a, const BiPolyQ& b) { return BiPolyQ(a.p_ - b.p_, {}); }
  friend BiPolyQ operator*(const BiPolyQ& a, const BiPolyQ& b) { return BiPolyQ(a.p_ * b.p_, {}); }
  BiPolyQ operator-() const { return BiPolyQ(-p_, {}); }
  friend bool operator==(const BiPolyQ&, const BiPolyQ&) = default;

 private:
  struct Trusted {};
  BiPolyQ(PolyQx p, Trusted) : p_(std::move(p)) {}

  PolyQx p_;
};

inline RatFuncQxy to_field(const BiPolyQ& p) { return RatFuncQxy(p.in_y()); }
inline RatFuncQxy to_field(const PolyQ& p) { return RatFuncQxy(RatFuncQ(p)); }
inline RatFuncQxy to_field(const Rat& c) { return from_rational<RatFuncQxy>(c); }

/// Monic lcm in Q[x] of the x-denominators of all coefficients.
PolyQ x_denominator(const PolyQx& p);

/// Reduced fraction num/den in Q[x,y]. The denominator is normalized so that
/// its leading coefficient in y is monic in x.
struct BiFraction {
  BiPolyQ num;
  BiPolyQ den;
};
BiFraction to_bivariate_fraction(const RatFuncQxy& e);
RatFuncQxy from_bivariate_fraction(const BiPolyQ& num, const BiPolyQ& den);

/// The element as a polynomial in x and y, if it is one.
std::optional<BiPolyQ> as_bipoly(const RatFuncQxy& e);
bool is_bipoly(const RatFuncQxy& e);
// Element of Q(x): no y in numerator or denominator.
bool is_y_free(const RatFuncQxy& e);
RatFuncQ as_x_function(const RatFuncQxy& e);
bool is_rational_constant(const RatFuncQxy& e);
Rat as_rational_constant(const RatFuncQxy& e);

/// Monic (in the sense of to_bivariate_fraction) lcm in Q[x,y] of the
/// reduced denominators of the entries.
BiPolyQ bivariate_common_denominator(std::span<const RatFuncQxy> entries);

/// Value at a rational point; empty at a pole.
std::optional<Rat> eval_point(const RatFuncQxy& e, const Rat& x, const Rat& y);

}  // namespace sosq
