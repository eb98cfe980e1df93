#include "sosq/roots.hpp"

#include <algorithm>

namespace sosq {

namespace {

Int floor_rat(const Rat& t) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return fl;
}

std::vector<PolyQ> sturm_sequence(const PolyQ& p) {
  std::vector<PolyQ> seq{p, p.derivative()};
  while (!seq.back().is_zero() && !seq.back().is_constant()) {
    PolyQ r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

int sign_changes(const std::vector<PolyQ>& seq, const Rat& at) {
  int changes = 0, last = 0;
  for (const auto& s : seq) {
    int sg = sgn(s.eval(at));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

struct Interval {
  Rat lo, hi;  // (lo, hi]
  int count;
};

}  // namespace

PolyQ linear_factor(const Rat& r) { return PolyQ::indeterminate() - PolyQ(r); }

PolyQ primitive_integer_form(const PolyQ& p) {
  if (p.is_zero()) return p;
  Int den = 1, content = 0;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  for (const auto& t : p.terms()) {
    Int c = t.coeff.get_num() * (den / t.coeff.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  }
  Rat scale = make_rat(den, content);
  if (sgn(p.leading_coefficient()) < 0) scale = -scale;
  return p.scaled(scale);
}

Rat simplest_rational_between(const Rat& lo, const Rat& hi) {
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rat(0);
  if (sgn(hi) < 0) return -simplest_rational_between(-hi, -lo);
  Int fl = floor_rat(lo);
  if (Rat(fl) == lo) return lo;
  if (Rat(fl + 1) <= hi) return Rat(fl + 1);
  Rat flr(fl);
  Rat inner = simplest_rational_between(1 / (hi - flr), 1 / (lo - flr));
  return flr + 1 / inner;
}

std::vector<RationalRoot> rational_roots_with_multiplicity(const PolyQ& g) {
  if (g.is_zero()) throw Error(Errc::ZeroPolynomial, "rational roots of the zero polynomial");
  std::vector<Rat> roots;
  PolyQ s = g.is_constant() ? g : exact_div(g, gcd(g, g.derivative()));
  if (s.low_degree() > 0) {
    roots.push_back(Rat(0));
    s = exact_div(s, PolyQ::indeterminate());
  }
  s = primitive_integer_form(s);

  if (!s.is_constant()) {
    // Every rational root p/q has q | lc, so two of them differ by at least
    // 1/lc^2. Isolate real roots below that width; the simplest fraction in
    // the isolating interval is the only possible rational root there.
    const Rat lc = abs(s.leading_coefficient());
    const Rat width = 1 / (lc * lc);
    Rat bound = 0;
    for (const auto& t : s.terms()) bound = std::max(bound, Rat(abs(t.coeff) / lc));
    bound += 1;

    const auto seq = sturm_sequence(s);
    std::vector<Interval> work;
    int total = sign_changes(seq, -bound) - sign_changes(seq, bound);
    if (total > 0) work.push_back({-bound, bound, total});
    while (!work.empty()) {
      Interval iv = work.back();
      work.pop_back();
      if (iv.count == 1 && iv.hi - iv.lo < width) {
        Rat cand = simplest_rational_between(iv.lo, iv.hi);
        if (cand > iv.lo && is_zero(s.eval(cand))) roots.push_back(cand);
        continue;
      }
      Rat mid = (iv.lo + iv.hi) / 2;
      int at_mid = sign_changes(seq, mid);
      int left = sign_changes(seq, iv.lo) - at_mid;
      if (left > 0) work.push_back({iv.lo, mid, left});
      if (iv.count - left > 0) work.push_back({mid, iv.hi, iv.count - left});
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<RationalRoot> out;
  for (const Rat& r : roots) {
    unsigned mult = 0;
    PolyQ rest = g;
    const PolyQ lin = linear_factor(r);
    for (;;) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    out.push_back({r, mult});
  }
  return out;
}

std::vector<Rat> rational_roots(const PolyQ& g) {
  std::vector<Rat> out;
  for (auto& r : rational_roots_with_multiplicity(g)) out.push_back(r.value);
  return out;
}

EvenPart squarefree_even_part(const PolyQ& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "even part of the zero polynomial");
  PolyQ h(Rat(1));
  for (const auto& r : rational_roots_with_multiplicity(f)) h *= pow(linear_factor(r.value), r.multiplicity / 2);
  return {h, exact_div(f, h * h)};
}

}  // namespace sosq
