#pragma once

// Sparse univariate polynomials and reduced rational functions over an exact
// field. The tower used throughout the library is
//
//     Q  ->  Q(x) = RatFunc<Rat>  ->  Q(x)(y) = RatFunc<RatFunc<Rat>>
//
// and the indeterminate of Poly<F> is fixed by the position of F in the tower:
// Poly<Rat> is a polynomial in x, Poly<RatFunc<Rat>> a polynomial in y.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "sosq/error.hpp"
#include "sosq/exact.hpp"

namespace sosq {

template <class F>
class Poly;
template <class F>
class RatFunc;

template <class F>
bool is_zero(const Poly<F>& p);

// product over Q with integer accumulation (defined in poly.cpp)
Poly<Rat> multiply_rational(const Poly<Rat>& a, const Poly<Rat>& b);
template <class F>
bool is_zero(const RatFunc<F>& r);

template <class F>
struct tower_depth;
template <>
struct tower_depth<Rat> : std::integral_constant<int, 0> {};
template <class F>
struct tower_depth<RatFunc<F>> : std::integral_constant<int, tower_depth<F>::value + 1> {};

template <class F>
concept ComputableField = requires(const F& a, const F& b) {
  { F(a + b) };
  { F(a - b) };
  { F(a * b) };
  { F(a / b) };
  { a == b } -> std::convertible_to<bool>;
  { is_zero(a) } -> std::convertible_to<bool>;
  tower_depth<F>::value;
};

/// Degree of a polynomial; the zero polynomial has no value (minus infinity).
/// std::optional orders nullopt below every value, which matches -inf.
using Degree = std::optional<std::size_t>;

// Embeds a rational constant at any level of the tower.
template <class T>
T from_rational(const Rat& q);

template <class F>
class Poly {
 public:
  struct Term {
    std::size_t exp;
    F coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  static constexpr char variable = "xy"[tower_depth<F>::value];

  Poly() = default;
  explicit Poly(const F& c) {
    if (!is_zero_value(c)) terms_.push_back({0, c});
  }

  static Poly monomial(const F& c, std::size_t exp) {
    Poly p;
    if (!is_zero_value(c)) p.terms_.push_back({exp, c});
    return p;
  }
  static Poly indeterminate() { return monomial(F(1), 1); }

  static Poly from_terms(std::vector<Term> terms) {
    std::map<std::size_t, F> acc;
    for (auto& t : terms) {
      auto [it, inserted] = acc.try_emplace(t.exp, t.coeff);
      if (!inserted) it->second = F(it->second + t.coeff);
    }
    return from_map(acc);
  }

  // terms must be sorted by exponent, distinct and nonzero
  static Poly from_canonical(std::vector<Term> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }

  Degree degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().exp;
  }
  // Degree of a nonzero polynomial; throws on zero.
  std::size_t deg() const {
    if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "degree of the zero polynomial");
    return terms_.back().exp;
  }
  std::size_t low_degree() const { return terms_.empty() ? 0 : terms_.front().exp; }

  F leading_coefficient() const { return terms_.empty() ? F(0) : terms_.back().coeff; }
  F coefficient(std::size_t exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const Term& t, std::size_t e) { return t.exp < e; });
    return (it != terms_.end() && it->exp == exp) ? it->coeff : F(0);
  }
  F constant_term() const { return coefficient(0); }

  bool is_monic() const { return !terms_.empty() && terms_.back().coeff == F(1); }

  Poly monic() const {
    if (terms_.empty()) return *this;
    return scaled(F(F(1) / leading_coefficient()));
  }

  Poly scaled(const F& c) const {
    if (is_zero_value(c)) return Poly();
    Poly out = *this;
    for (auto& t : out.terms_) t.coeff = F(t.coeff * c);
    return out;
  }

  Poly shifted(std::size_t k) const {
    Poly out = *this;
    for (auto& t : out.terms_) t.exp += k;
    return out;
  }

  Poly derivative() const {
    Poly out;
    for (const auto& t : terms_) {
      if (t.exp == 0) continue;
      out.terms_.push_back({t.exp - 1, F(t.coeff * from_rational<F>(Rat(static_cast<unsigned long>(t.exp))))});
    }
    return out;
  }

  F eval(const F& at) const {
    // Horner over the sparse exponents, from the top.
    F acc(0);
    std::size_t prev = terms_.empty() ? 0 : terms_.back().exp;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      for (std::size_t k = it->exp; k < prev; ++k) acc = F(acc * at);
      acc = F(acc + it->coeff);
      prev = it->exp;
    }
    for (std::size_t k = 0; k < prev; ++k) acc = F(acc * at);
    return acc;
  }

  Poly operator-() const {
    Poly out = *this;
    for (auto& t : out.terms_) t.coeff = F(-t.coeff);
    return out;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (b.terms_.size() == 1) return a.shifted(b.terms_[0].exp).scaled(b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.shifted(a.terms_[0].exp).scaled(a.terms_[0].coeff);
    if constexpr (std::same_as<F, Rat>) return multiply_rational(a, b);
    std::map<std::size_t, F> acc;
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        F prod(s.coeff * t.coeff);
        auto [it, inserted] = acc.try_emplace(s.exp + t.exp, prod);
        if (!inserted) it->second = F(it->second + prod);
      }
    }
    return from_map(acc);
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  static bool is_zero_value(const F& c) { return sosq::is_zero(c); }

  static Poly from_map(const std::map<std::size_t, F>& acc) {
    Poly p;
    p.terms_.reserve(acc.size());
    for (const auto& [e, c] : acc) {
      if (!is_zero_value(c)) p.terms_.push_back({e, c});
    }
    return p;
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    Poly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp < b.terms_[j].exp)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exp < a.terms_[i].exp) {
        const auto& t = b.terms_[j++];
        out.terms_.push_back({t.exp, subtract ? F(-t.coeff) : t.coeff});
      } else {
        F c = subtract ? F(a.terms_[i].coeff - b.terms_[j].coeff) : F(a.terms_[i].coeff + b.terms_[j].coeff);
        if (!is_zero_value(c)) out.terms_.push_back({a.terms_[i].exp, c});
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<Term> terms_;  // nonzero coefficients, strictly increasing exponents
};

template <class F>
bool is_zero(const Poly<F>& p) {
  return p.is_zero();
}

template <class F>
Poly<F> pow(const Poly<F>& p, std::size_t k) {
  Poly<F> result(F(1)), base = p;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

/// Euclidean division: a = q*b + r with deg r < deg b.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  const std::size_t db = b.deg();
  const F lead_inv = F(F(1) / b.leading_coefficient());
  std::vector<typename Poly<F>::Term> quot;
  Poly<F> r = a;
  while (!r.is_zero() && r.deg() >= db) {
    std::size_t e = r.deg() - db;
    F c(r.leading_coefficient() * lead_inv);
    quot.push_back({e, c});
    r -= b.shifted(e).scaled(c);
  }
  std::reverse(quot.begin(), quot.end());
  return {Poly<F>::from_terms(std::move(quot)), r};
}

/// a / b, which must be exact.
template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division is not exact");
  return q;
}

template <class F>
bool divides(const Poly<F>& d, const Poly<F>& a) {
  return divmod(a, d).second.is_zero();
}

template <class F>
struct is_rational_function : std::false_type {};
template <class G>
struct is_rational_function<RatFunc<G>> : std::true_type {};

template <class G>
Poly<RatFunc<G>> gcd_over_fractions(const Poly<RatFunc<G>>& a, const Poly<RatFunc<G>>& b);

// Q[x] gcd on primitive integer polynomials (defined in poly.cpp).
Poly<Rat> gcd_rational(const Poly<Rat>& a, const Poly<Rat>& b);

/// Monic greatest common divisor.
template <class F>
Poly<F> gcd(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() && b.is_zero()) throw Error(Errc::BothZero, "gcd of two zero polynomials");
  // plain Euclid swells coefficients badly over Q and over G(x)
  if constexpr (is_rational_function<F>::value) {
    return gcd_over_fractions(a, b);
  } else if constexpr (std::same_as<F, Rat>) {
    return gcd_rational(a, b);
  } else {
    Poly<F> r0 = a.monic(), r1 = b.monic();
    while (!r1.is_zero()) {
      Poly<F> r2 = divmod(r0, r1).second.monic();
      r0 = std::move(r1);
      r1 = std::move(r2);
    }
    return r0;
  }
}

/// Monic least common multiple of two nonzero polynomials.
template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) throw Error(Errc::ZeroPolynomial, "lcm with the zero polynomial");
  if (a == b || b.is_constant()) return a.monic();
  if (a.is_constant()) return b.monic();
  const Poly<F> g = gcd(a, b);
  if (g.deg() == b.deg()) return a.monic();
  if (g.deg() == a.deg()) return b.monic();
  return (exact_div(a, g) * b).monic();
}

/// Reduced fraction num/den with a monic denominator. Zero is 0/1.
template <class F>
class RatFunc {
 public:
  using Field = F;
  using PolyT = Poly<F>;

  RatFunc() : den_(F(1)) {}
  explicit RatFunc(long c) : num_(F(c)), den_(F(1)) {}
  explicit RatFunc(const F& c) : num_(c), den_(F(1)) {}
  explicit RatFunc(PolyT p) : num_(std::move(p)), den_(F(1)) {}
  RatFunc(PolyT num, PolyT den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const PolyT& num() const { return num_; }
  const PolyT& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return den_.is_constant() && num_.is_constant(); }
  // numerator degree strictly below denominator degree (zero counts as proper)
  bool is_proper() const { return num_.degree() < den_.degree(); }

  RatFunc operator-() const { return from_reduced(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.is_polynomial() && b.is_polynomial()) return from_reduced(a.num_ * b.num_, PolyT(F(1)));
    // cross-cancel so the product is reduced without a final gcd
    PolyT g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    PolyT n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    PolyT d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    F lc = d.leading_coefficient();
    if (!(lc == F(1))) {
      F inv(F(1) / lc);
      n = n.scaled(inv);
      d = d.scaled(inv);
    }
    return from_reduced(std::move(n), std::move(d));
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "rational function division by zero");
    return a * b.inverse();
  }

  RatFunc inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    F lc = num_.leading_coefficient();
    F inv(F(1) / lc);
    return from_reduced(den_.scaled(inv), num_.scaled(inv));
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  F eval(const F& at) const {
    F d = den_.eval(at);
    if (sosq::is_zero(d)) throw Error(Errc::DivisionByZero, "evaluation at a pole");
    return F(num_.eval(at) / d);
  }

 private:
  static RatFunc from_reduced(PolyT num, PolyT den) {
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  static RatFunc add(const RatFunc& a, const RatFunc& b, bool subtract) {
    if (a.den_ == b.den_) {
      PolyT n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (a.is_polynomial()) return from_reduced(std::move(n), a.den_);
      return RatFunc(std::move(n), a.den_);
    }
    PolyT n = subtract ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
    return RatFunc(std::move(n), a.den_ * b.den_);
  }

  void normalize() {
    if (den_.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
      den_ = PolyT(F(1));
      return;
    }
    PolyT g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    F lc = den_.leading_coefficient();
    if (!(lc == F(1))) {
      F inv(F(1) / lc);
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  PolyT num_, den_;
};

template <class F>
bool is_zero(const RatFunc<F>& r) {
  return r.is_zero();
}

namespace detail {

// Scales p by a nonzero element of G(x) so that every coefficient lies in
// G[x] and the coefficients have no common factor.
template <class G>
Poly<RatFunc<G>> primitive_part(const Poly<RatFunc<G>>& p) {
  using PG = Poly<G>;
  PG den(G(1));
  for (const auto& t : p.terms()) {
    if (!t.coeff.den().is_constant()) den = lcm(den, t.coeff.den());
  }
  std::vector<PG> nums;
  PG content;
  for (const auto& t : p.terms()) {
    PG n = den.is_constant() ? t.coeff.num() : t.coeff.num() * exact_div(den, t.coeff.den());
    content = content.is_zero() ? n.monic() : gcd(content, n);
    nums.push_back(std::move(n));
  }
  std::vector<typename Poly<RatFunc<G>>::Term> terms;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    PG c = content.is_constant() ? nums[i] : exact_div(nums[i], content);
    terms.push_back({p.terms()[i].exp, RatFunc<G>(std::move(c))});
  }
  return Poly<RatFunc<G>>::from_terms(std::move(terms));
}

// lc(b)^k * a mod b for coefficients in G[x]; stays inside G[x][t].
template <class G>
Poly<RatFunc<G>> pseudo_remainder(Poly<RatFunc<G>> r, const Poly<RatFunc<G>>& b) {
  const std::size_t db = b.deg();
  const RatFunc<G> lb = b.leading_coefficient();
  while (!r.is_zero() && r.deg() >= db) {
    const RatFunc<G> lr = r.leading_coefficient();
    r = r.scaled(lb) - b.shifted(r.deg() - db).scaled(lr);
  }
  return r;
}

}  // namespace detail

/// Primitive remainder sequence over G[x]: each remainder is reduced to its
/// primitive part, which keeps coefficient degrees near those of the inputs.
template <class G>
Poly<RatFunc<G>> gcd_over_fractions(const Poly<RatFunc<G>>& a, const Poly<RatFunc<G>>& b) {
  using P = Poly<RatFunc<G>>;
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  P r0 = detail::primitive_part(a), r1 = detail::primitive_part(b);
  if (r0.deg() < r1.deg()) std::swap(r0, r1);
  if (r1.deg() == 0) return P(RatFunc<G>(1));

  // A common factor survives the specialisation x -> x0 whenever both
  // leading coefficients stay nonzero there, so a coprime specialisation
  // proves coprimality. This settles the usual case without a remainder
  // sequence.
  for (const Rat& at : {make_rat(Int(7919), Int(13)), make_rat(Int(-3), Int(1009))}) {
    const G x0 = from_rational<G>(at);
    if (is_zero(r0.leading_coefficient().eval(x0)) || is_zero(r1.leading_coefficient().eval(x0))) continue;
    auto specialise = [&](const P& p) {
      std::vector<typename Poly<G>::Term> terms;
      for (const auto& t : p.terms()) terms.push_back({t.exp, t.coeff.eval(x0)});
      return Poly<G>::from_terms(std::move(terms));
    };
    if (gcd(specialise(r0), specialise(r1)).deg() == 0) return P(RatFunc<G>(1));
    break;
  }
  while (!r1.is_zero()) {
    if (r1.deg() == 0) return P(RatFunc<G>(1));
    P r2 = detail::pseudo_remainder(r0, r1);
    r0 = std::move(r1);
    r1 = r2.is_zero() ? std::move(r2) : detail::primitive_part(r2);
  }
  return r0.monic();
}

template <class T>
T from_rational(const Rat& q) {
  if constexpr (std::same_as<T, Rat>) {
    return q;
  } else {
    return T(from_rational<typename T::Field>(q));
  }
}

using PolyQ = Poly<Rat>;           // Q[x]
using RatFuncQ = RatFunc<Rat>;     // Q(x)
using PolyQx = Poly<RatFuncQ>;     // Q(x)[y]
using RatFuncQxy = RatFunc<RatFuncQ>;  // Q(x)(y)

/// Squarefree decomposition (Yun) of a nonzero polynomial over a field of
/// characteristic zero: p = lc * prod_i factors[i-1]^i with monic, pairwise
/// coprime, squarefree factors (some may be 1).
template <class F>
std::vector<Poly<F>> squarefree_decomposition(const Poly<F>& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree decomposition of zero");
  std::vector<Poly<F>> out;
  Poly<F> f = p.monic();
  if (f.is_constant()) return out;
  Poly<F> df = f.derivative();
  Poly<F> a0 = gcd(f, df);
  Poly<F> b = exact_div(f, a0);
  Poly<F> c = exact_div(df, a0);
  Poly<F> d = c - b.derivative();
  while (!b.is_constant()) {
    Poly<F> a = gcd(b, d);
    out.push_back(a);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative();
  }
  return out;
}

template <class F>
std::optional<Poly<F>> sqrt_exact(const Poly<F>& p);
template <class F>
std::optional<RatFunc<F>> sqrt_exact(const RatFunc<F>& r);

/// Square root in F[t], if p is a square there.
template <class F>
std::optional<Poly<F>> sqrt_exact(const Poly<F>& p) {
  if (p.is_zero()) return p;
  auto lead = sqrt_exact(p.leading_coefficient());
  if (!lead) return std::nullopt;
  auto parts = squarefree_decomposition(p);
  Poly<F> root(*lead);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::size_t mult = i + 1;
    if (parts[i].is_constant()) continue;
    if (mult % 2 == 1) return std::nullopt;
    root *= pow(parts[i], mult / 2);
  }
  if (!(root * root == p)) throw Error(Errc::InternalDescentFailure, "square root does not square back");
  return root;
}

/// Square root in the fraction field; a reduced fraction with monic
/// denominator is a square iff numerator and denominator are.
template <class F>
std::optional<RatFunc<F>> sqrt_exact(const RatFunc<F>& r) {
  auto n = sqrt_exact(r.num());
  if (!n) return std::nullopt;
  auto d = sqrt_exact(r.den());
  if (!d) return std::nullopt;
  return RatFunc<F>(*n, *d);
}

template <class T>
bool square_test(const T& v) {
  return sqrt_exact(v).has_value();
}

/// Componentwise split v = w + u into polynomial parts w and proper parts u.
template <class F>
struct FractionalSplit {
  std::vector<Poly<F>> polynomial;
  std::vector<RatFunc<F>> proper;
};

template <class F>
FractionalSplit<F> fractional_split(const std::vector<RatFunc<F>>& v) {
  FractionalSplit<F> out;
  out.polynomial.reserve(v.size());
  out.proper.reserve(v.size());
  for (const auto& c : v) {
    auto [q, r] = divmod(c.num(), c.den());
    out.polynomial.push_back(q);
    out.proper.push_back(c.is_polynomial() ? RatFunc<F>() : RatFunc<F>(r, c.den()));
  }
  return out;
}

/// Monic lcm of the denominators of a vector of rational functions.
template <class F>
Poly<F> common_denominator(const std::vector<RatFunc<F>>& v) {
  Poly<F> d(F(1));
  for (const auto& c : v) {
    if (!c.is_polynomial() && !(c.den() == d)) d = lcm(d, c.den());
  }
  return d;
}

/// v = numerators / denominator with one shared monic denominator.
template <class F>
struct CommonDenominator {
  std::vector<Poly<F>> numerators;
  Poly<F> denominator;
};

template <class F>
CommonDenominator<F> to_common_denominator(const std::vector<RatFunc<F>>& v) {
  CommonDenominator<F> out{{}, common_denominator(v)};
  out.numerators.reserve(v.size());
  for (const auto& c : v) {
    out.numerators.push_back(c.den() == out.denominator ? c.num() : c.num() * exact_div(out.denominator, c.den()));
  }
  return out;
}

}  // namespace sosq
