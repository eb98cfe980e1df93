#pragma once

// Cassels-Pfister reflection descent. A vector v of rational functions over a
// field F with phi(v) = f a polynomial is repeatedly reflected about its
// fractional part u:
//
//     v' = v - (2 b(v, u) / phi(u)) u
//
// which keeps phi(v) fixed and strictly lowers the degree of the common
// denominator, until every entry is a polynomial. The number of entries never
// changes.
//
// Internally v = w / d with polynomial w and one monic d. With r = w mod d,
// phi(r) is divisible by d, the new denominator is d' = phi(r) / d, and the
// new numerators are (phi(r) w - 2 b(w, r) r) / d^2.

#include <algorithm>
#include <functional>
#include <type_traits>
#include <vector>

#include "sosq/forms.hpp"
#include "sosq/poly.hpp"

namespace sosq {

/// Degree of the monic lcm of the entry denominators.
template <class F>
std::size_t denominator_degree(const std::vector<RatFunc<F>>& v) {
  return common_denominator(v).deg();
}

template <class F>
bool all_polynomial(const std::vector<RatFunc<F>>& v) {
  for (const auto& c : v) {
    if (!c.is_polynomial()) return false;
  }
  return true;
}

namespace detail {

template <class F>
Poly<F> poly_form(const DiagForm& form, const std::vector<Poly<F>>& u, const std::vector<Poly<F>>& v) {
  Poly<F> acc;
  for (std::size_t i = 0; i < u.size(); ++i) acc += (u[i] * v[i]).scaled(from_rational<F>(form.coefficients()[i]));
  return acc;
}

// Divides numerators and denominator by their common factor and makes the
// denominator monic, so that it is the lcm of the reduced entry denominators.
template <class F>
void reduce(CommonDenominator<F>& c) {
  Poly<F> g = c.denominator;
  for (const auto& w : c.numerators) {
    if (g.is_constant()) break;
    if (!w.is_zero()) g = gcd(g, w);
  }
  if (!g.is_constant()) {
    c.denominator = exact_div(c.denominator, g);
    for (auto& w : c.numerators) w = exact_div(w, g);
  }
  const F lc = c.denominator.leading_coefficient();
  if (!(lc == F(1))) {
    const F inv(F(1) / lc);
    c.denominator = c.denominator.scaled(inv);
    for (auto& w : c.numerators) w = w.scaled(inv);
  }
}

template <class F>
std::vector<RatFunc<F>> to_fractions(const CommonDenominator<F>& c) {
  std::vector<RatFunc<F>> out;
  out.reserve(c.numerators.size());
  for (const auto& w : c.numerators) out.emplace_back(w, c.denominator);
  return out;
}

// One reflection on a reduced vector with nonconstant denominator and
// phi(w) = f d^2.
template <class F>
CommonDenominator<F> reflect_once(const DiagForm& form, const Poly<F>& f, const CommonDenominator<F>& c) {
  const Poly<F>& d = c.denominator;
  std::vector<Poly<F>> r;
  r.reserve(c.numerators.size());
  for (const auto& w : c.numerators) r.push_back(divmod(w, d).second);

  const Poly<F> phi_r = poly_form(form, r, r);
  if (phi_r.is_zero()) throw Error(Errc::IsotropicVector, "form vanishes on the fractional part");
  const Poly<F> b_wr = poly_form(form, c.numerators, r);

  const auto [d_next, rem] = divmod(phi_r, d);
  if (!rem.is_zero()) throw Error(Errc::InternalDescentFailure, "phi(u) d^2 is not divisible by d");
  const Poly<F> d2 = d * d;
  const Poly<F> two_b = b_wr.scaled(from_rational<F>(Rat(2)));

  CommonDenominator<F> next{{}, d_next};
  next.numerators.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto [w, rest] = divmod(c.numerators[i] * phi_r - r[i] * two_b, d2);
    if (!rest.is_zero()) throw Error(Errc::InternalDescentFailure, "reflected numerator is not divisible by d^2");
    next.numerators.push_back(std::move(w));
  }
  reduce(next);

  if (!(poly_form(form, next.numerators, next.numerators) == f * next.denominator * next.denominator)) {
    throw Error(Errc::InternalDescentFailure, "reflection changed the represented value");
  }
  if (next.denominator.deg() >= d.deg()) {
    throw Error(Errc::InternalDescentFailure, "denominator degree did not decrease");
  }
  return next;
}

// Over F = G(x) the descent runs on numerators and a denominator with
// coefficients in G[x]. Units of G[x][t] are nonzero elements of G[x], so
// fractional parts come from pseudo-remainders and every coefficient
// operation stays polynomial.
template <class G>
struct Integral {
  std::vector<Poly<RatFunc<G>>> numerators;
  Poly<RatFunc<G>> denominator;
};

template <class G>
RatFunc<G> lift(Poly<G> p) {
  return RatFunc<G>(std::move(p));
}

// a / b where the quotient is known to lie in G[x][t]
template <class G>
Poly<RatFunc<G>> exact_div_integral(Poly<RatFunc<G>> a, const Poly<RatFunc<G>>& b) {
  using Term = typename Poly<RatFunc<G>>::Term;
  const std::size_t db = b.deg();
  const Poly<G> lb = b.leading_coefficient().num();
  std::vector<Term> quot;
  while (!a.is_zero() && a.deg() >= db) {
    const std::size_t k = a.deg() - db;
    auto [c, rest] = divmod(a.leading_coefficient().num(), lb);
    if (!rest.is_zero()) throw Error(Errc::InternalDescentFailure, "inexact coefficient division");
    RatFunc<G> q = lift(std::move(c));
    a -= b.shifted(k).scaled(q);
    quot.push_back({k, std::move(q)});
  }
  if (!a.is_zero()) throw Error(Errc::InternalDescentFailure, "inexact polynomial division");
  std::reverse(quot.begin(), quot.end());
  return Poly<RatFunc<G>>::from_terms(std::move(quot));
}

// lc(b)^k a mod b with exactly k elimination rounds, deg a < deg b + k
template <class G>
Poly<RatFunc<G>> pseudo_remainder_fixed(Poly<RatFunc<G>> a, const Poly<RatFunc<G>>& b, std::size_t k) {
  const std::size_t db = b.deg();
  const RatFunc<G> lb = b.leading_coefficient();
  for (std::size_t j = db + k; j-- > db;) {
    const RatFunc<G> c = a.coefficient(j);
    a = a.scaled(lb);
    if (!c.is_zero()) a -= b.shifted(j - db).scaled(c);
  }
  return a;
}

// Monic gcd of polynomials in G[x]; a cheap divisibility test skips most of
// the gcds once the running value has settled.
template <class G>
Poly<G> joint_gcd(const std::vector<const Poly<G>*>& polys) {
  Poly<G> g;
  for (const auto* p : polys) {
    if (p->is_zero()) continue;
    if (g.is_zero()) {
      g = p->monic();
    } else if (!divides(g, *p)) {
      g = gcd(g, *p);
    }
    if (g.is_constant()) break;
  }
  return g.is_zero() ? Poly<G>(G(1)) : g;
}

template <class G>
void collect_coefficients(const Poly<RatFunc<G>>& p, std::vector<const Poly<G>*>& out) {
  for (const auto& t : p.terms()) out.push_back(&t.coeff.num());
}

// Removes the common G[x]-content and fixes the scalar so that the
// denominator's leading coefficient is monic.
template <class G>
void make_primitive(Integral<G>& c) {
  std::vector<const Poly<G>*> coeffs;
  collect_coefficients(c.denominator, coeffs);
  for (const auto& w : c.numerators) collect_coefficients(w, coeffs);
  const Poly<G> g = joint_gcd(coeffs);
  auto divide = [&](Poly<RatFunc<G>>& p) {
    std::vector<typename Poly<RatFunc<G>>::Term> terms;
    for (const auto& t : p.terms()) terms.push_back({t.exp, lift(exact_div(t.coeff.num(), g))});
    p = Poly<RatFunc<G>>::from_terms(std::move(terms));
  };
  if (!g.is_constant()) {
    divide(c.denominator);
    for (auto& w : c.numerators) divide(w);
    coeffs.clear();
    collect_coefficients(c.denominator, coeffs);
    for (const auto& w : c.numerators) collect_coefficients(w, coeffs);
  }
  G scale;
  if constexpr (std::same_as<G, Rat>) {
    // integer coefficients without a common factor, positive leading one
    Int den = 1, num = 0;
    for (const auto* p : coeffs) {
      for (const auto& t : p->terms()) den = lcm(den, Int(t.coeff.get_den()));
    }
    for (const auto* p : coeffs) {
      for (const auto& t : p->terms()) num = gcd(num, Int(t.coeff.get_num() * (den / t.coeff.get_den())));
    }
    scale = make_rat(den, num);
    if (sgn(c.denominator.leading_coefficient().num().leading_coefficient()) < 0) scale = -scale;
  } else {
    scale = G(1) / c.denominator.leading_coefficient().num().leading_coefficient();
  }
  if (!(scale == G(1))) {
    const RatFunc<G> k(scale);
    c.denominator = c.denominator.scaled(k);
    for (auto& w : c.numerators) w = w.scaled(k);
  }
}

template <class G>
Poly<G> content_of(const Poly<RatFunc<G>>& p) {
  std::vector<const Poly<G>*> coeffs;
  collect_coefficients(p, coeffs);
  return joint_gcd(coeffs);
}

template <class G>
Poly<RatFunc<G>> divide_content(const Poly<RatFunc<G>>& p, const Poly<G>& g) {
  if (g.is_constant()) return p;
  std::vector<typename Poly<RatFunc<G>>::Term> terms;
  for (const auto& t : p.terms()) terms.push_back({t.exp, lift(exact_div(t.coeff.num(), g))});
  return Poly<RatFunc<G>>::from_terms(std::move(terms));
}

// n / d with both scaled into G[x][t]
template <class G>
std::pair<Poly<RatFunc<G>>, Poly<RatFunc<G>>> clear_coefficients(const RatFunc<RatFunc<G>>& e) {
  std::vector<RatFunc<G>> coeffs;
  for (const auto& t : e.num().terms()) coeffs.push_back(t.coeff);
  for (const auto& t : e.den().terms()) coeffs.push_back(t.coeff);
  const RatFunc<G> m = lift(common_denominator(coeffs));
  return {e.num().scaled(m), e.den().scaled(m)};
}

// Entry i is n_i / (c_i p_i) with c_i in G[x] and p_i primitive. The shared
// denominator is lcm(c_i) lcm(p_i); Gauss's lemma keeps every quotient by a
// primitive polynomial inside G[x][t].
template <class G>
Integral<G> to_integral(const std::vector<RatFunc<RatFunc<G>>>& v) {
  using P = Poly<RatFunc<G>>;
  std::vector<P> nums, prims;
  std::vector<Poly<G>> contents;
  Poly<G> scalar(G(1));
  P prim(RatFunc<G>(1));
  for (const auto& e : v) {
    auto [n, d] = clear_coefficients(e);
    Poly<G> c = content_of(d);
    P p = divide_content(d, c);
    scalar = lcm(scalar, c);
    if (!p.is_constant()) {
      const P g = primitive_part(gcd(prim, p));
      prim = exact_div_integral(prim, g) * p;
    }
    nums.push_back(std::move(n));
    prims.push_back(std::move(p));
    contents.push_back(std::move(c));
  }
  Integral<G> out{{}, prim.scaled(lift(scalar))};
  for (std::size_t i = 0; i < nums.size(); ++i) {
    const RatFunc<G> unit = lift(exact_div(scalar, contents[i]));
    out.numerators.push_back((nums[i] * exact_div_integral(prim, prims[i])).scaled(unit));
  }
  make_primitive(out);
  return out;
}

template <class G>
void cancel_common_factor(Integral<G>& c) {
  Poly<RatFunc<G>> g = c.denominator;
  for (const auto& w : c.numerators) {
    if (g.deg() == 0) return;
    if (!w.is_zero()) g = gcd(g, w);
  }
  if (g.deg() == 0) return;
  g = primitive_part(g);
  c.denominator = exact_div_integral(c.denominator, g);
  for (auto& w : c.numerators) w = exact_div_integral(w, g);
  make_primitive(c);
}

template <class G>
std::vector<RatFunc<RatFunc<G>>> to_fractions(const Integral<G>& c) {
  std::vector<RatFunc<RatFunc<G>>> out;
  out.reserve(c.numerators.size());
  for (const auto& w : c.numerators) out.emplace_back(w, c.denominator);
  return out;
}

// f = num / den with num in G[x][t] and den in G[x]
template <class G>
std::pair<Poly<RatFunc<G>>, RatFunc<G>> integral_target(const Poly<RatFunc<G>>& f) {
  std::vector<RatFunc<G>> coeffs;
  for (const auto& t : f.terms()) coeffs.push_back(t.coeff);
  const RatFunc<G> m = lift(common_denominator(coeffs));
  return {f.scaled(m), m};
}

template <class G>
Integral<G> reflect_integral(const DiagForm& form, const std::pair<Poly<RatFunc<G>>, RatFunc<G>>& target,
                             const Integral<G>& c) {
  using P = Poly<RatFunc<G>>;
  const P& d = c.denominator;
  std::size_t top = 0;
  for (const auto& w : c.numerators) top = std::max(top, w.is_zero() ? 0 : w.deg());
  const std::size_t k = top >= d.deg() ? top - d.deg() + 1 : 0;
  std::vector<P> r;
  r.reserve(c.numerators.size());
  for (const auto& w : c.numerators) r.push_back(pseudo_remainder_fixed(w, d, k));

  const P phi_r = poly_form(form, r, r);
  if (phi_r.is_zero()) throw Error(Errc::IsotropicVector, "form vanishes on the fractional part");
  const P two_b = poly_form(form, c.numerators, r).scaled(RatFunc<G>(2));
  // phi(r) / d need not have coefficients in G[x], but phi(r) / (d / content)
  // does, and the content goes into the new denominator as a unit
  const Poly<G> content = content_of(d);
  const P d_prim = d.scaled(lift(content).inverse());
  const P d_next = exact_div_integral(phi_r, d_prim);

  // the reflected numerators are divisible by d^2 over G(x), hence by the
  // primitive d_prim^2 over G[x]
  const P d2 = d_prim * d_prim;
  Integral<G> next{{}, d_next.scaled(lift(content))};
  for (std::size_t i = 0; i < r.size(); ++i) {
    next.numerators.push_back(exact_div_integral(c.numerators[i] * phi_r - r[i] * two_b, d2));
  }
  make_primitive(next);
  cancel_common_factor(next);

  const P& dn = next.denominator;
  if (!(poly_form(form, next.numerators, next.numerators).scaled(target.second) == target.first * dn * dn)) {
    throw Error(Errc::InternalDescentFailure, "reflection changed the represented value");
  }
  if (dn.deg() >= d.deg()) throw Error(Errc::InternalDescentFailure, "denominator degree did not decrease");
  return next;
}

}  // namespace detail

/// One reflection. Requires a non-polynomial entry and a polynomial value.
template <class F>
std::vector<RatFunc<F>> descent_step(const DiagForm& form, const std::vector<RatFunc<F>>& v) {
  const RatFunc<F> value = eval_form(form, v);
  if (!value.is_polynomial()) throw Error(Errc::NotPolynomial, "represented value is not a polynomial");
  if (all_polynomial(v)) throw Error(Errc::InvalidArgument, "descent step on a polynomial vector");
  auto c = to_common_denominator(v);
  detail::reduce(c);
  return detail::to_fractions(detail::reflect_once(form, value.num(), c));
}

template <class F>
struct DescentResult {
  std::vector<Poly<F>> entries;
  // common denominator degree of the input, then after every step (ends at 0)
  std::vector<std::size_t> denominator_degrees;
};

// Called with the step index and the vector after that step.
template <class F>
using DescentObserver = std::function<void(std::size_t, const std::vector<RatFunc<F>>&)>;

/// Rewrites a representation f = phi(v) over F(t) as one over F[t] with the
/// same number of entries.
template <class F>
DescentResult<F> cassels_descent(const DiagForm& form, const Poly<F>& f, const std::vector<RatFunc<F>>& v,
                                 const std::type_identity_t<DescentObserver<F>>& observer = {}) {
  if (v.size() != form.rank()) throw Error(Errc::RankMismatch, "vector length differs from form rank");
  if constexpr (is_rational_function<F>::value) {
    auto ic = detail::to_integral(v);
    const auto target = detail::integral_target(f);
    const auto& d = ic.denominator;
    if (!(detail::poly_form(form, ic.numerators, ic.numerators).scaled(target.second) == target.first * d * d)) {
      throw Error(Errc::IdentityViolated, "phi(v) differs from the target");
    }
    DescentResult<F> out;
    out.denominator_degrees.push_back(ic.denominator.deg());
    const std::size_t cap = ic.denominator.deg() + 1;
    for (std::size_t step = 0; !ic.denominator.is_constant(); ++step) {
      if (step >= cap) throw Error(Errc::InternalDescentFailure, "iteration cap exceeded");
      ic = detail::reflect_integral(form, target, ic);
      out.denominator_degrees.push_back(ic.denominator.deg());
      if (observer) observer(step, detail::to_fractions(ic));
    }
    const F inv = F(1) / ic.denominator.leading_coefficient();
    for (const auto& w : ic.numerators) out.entries.push_back(w.scaled(inv));
    return out;
  }
  auto cur = to_common_denominator(v);
  detail::reduce(cur);
  const Poly<F>& d = cur.denominator;
  if (!(detail::poly_form(form, cur.numerators, cur.numerators) == f * d * d)) {
    throw Error(Errc::IdentityViolated, "phi(v) differs from the target");
  }

  DescentResult<F> out;
  const std::size_t start = cur.denominator.deg();
  out.denominator_degrees.push_back(start);
  const std::size_t cap = start + 1;
  for (std::size_t step = 0; !cur.denominator.is_constant(); ++step) {
    if (step >= cap) throw Error(Errc::InternalDescentFailure, "iteration cap exceeded");
    cur = detail::reflect_once(form, f, cur);
    out.denominator_degrees.push_back(cur.denominator.deg());
    if (observer) observer(step, detail::to_fractions(cur));
  }
  out.entries = std::move(cur.numerators);
  return out;
}

}  // namespace sosq
