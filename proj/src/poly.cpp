#include "sosq/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace sosq {

namespace {

using ZPoly = std::vector<Int>;  // dense, index = exponent, no leading zeros

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly primitive(ZPoly p) {
  Int c = 0;
  for (const Int& a : p) {
    c = gcd(c, a);
    if (c == 1) break;
  }
  if (c > 1) {
    for (Int& a : p) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  }
  if (!p.empty() && p.back() < 0) {
    for (Int& a : p) a = -a;
  }
  return p;
}

ZPoly to_integer(const PolyQ& p) {
  Int den = 1;
  for (const auto& t : p.terms()) den = lcm(den, Int(t.coeff.get_den()));
  ZPoly out(p.deg() + 1, Int(0));
  for (const auto& t : p.terms()) out[t.exp] = t.coeff.get_num() * (den / t.coeff.get_den());
  return primitive(std::move(out));
}

// lc(b)^k * a mod b
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  const Int& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const Int la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (Int& c : a) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

using u64 = std::uint64_t;

u64 mod_of(const Int& a, u64 p) {
  u64 r = mpz_fdiv_ui(a.get_mpz_t(), p);
  return r;
}

u64 inv_mod(u64 a, u64 p) {
  u64 r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Degree of gcd(a mod p, b mod p); p below 2^32 so products fit in 64 bits.
std::size_t modular_gcd_degree(const ZPoly& a, const ZPoly& b, u64 p) {
  auto reduce = [p](const ZPoly& z) {
    std::vector<u64> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = mod_of(z[i], p);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  std::vector<u64> r0 = reduce(a), r1 = reduce(b);
  while (!r1.empty()) {
    const u64 inv = inv_mod(r1.back(), p);
    while (r0.size() >= r1.size()) {
      const u64 f = r0.back() * inv % p;
      const std::size_t shift = r0.size() - r1.size();
      for (std::size_t i = 0; i < r1.size(); ++i) r0[i + shift] = (r0[i + shift] + (p - f) * r1[i]) % p;
      while (!r0.empty() && r0.back() == 0) r0.pop_back();
    }
    std::swap(r0, r1);
  }
  return r0.size() - 1;
}

// p = num / den with integer num
std::pair<std::vector<std::pair<std::size_t, Int>>, Int> clear_denominators(const PolyQ& p) {
  Int den = 1;
  for (const auto& t : p.terms()) {
    if (t.coeff.get_den() != 1) den = lcm(den, Int(t.coeff.get_den()));
  }
  std::vector<std::pair<std::size_t, Int>> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) out.emplace_back(t.exp, t.coeff.get_num() * (den / t.coeff.get_den()));
  return {std::move(out), den};
}


using Sparse = std::vector<std::pair<std::size_t, Int>>;

// Kronecker substitution: the coefficients go into limb-aligned slots of a
// single integer, so one GMP multiplication (subquadratic for large operands)
// replaces the coefficient-by-coefficient products.
std::size_t max_bits(const Sparse& p) {
  std::size_t m = 0;
  for (const auto& t : p) m = std::max(m, mpz_sizeinbase(t.second.get_mpz_t(), 2));
  return m;
}

Int pack(const Sparse& p, std::size_t slot, std::size_t slots) {
  std::vector<mp_limb_t> pos(slot * slots, 0), neg(slot * slots, 0);
  for (const auto& [e, c] : p) {
    auto& buf = sgn(c) < 0 ? neg : pos;
    const std::size_t n = mpz_size(c.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) buf[e * slot + i] = mpz_getlimbn(c.get_mpz_t(), static_cast<mp_size_t>(i));
  }
  Int a, b;
  mpz_import(a.get_mpz_t(), pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  mpz_import(b.get_mpz_t(), neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
  return a - b;
}

// Signed digits r_k in [-2^(b-1), 2^(b-1)) with value = sum r_k 2^(b k).
std::vector<Int> unpack(const Int& value, std::size_t slot, std::size_t slots) {
  const int sign = sgn(value);
  const Int n = abs(value);
  const std::size_t size = mpz_size(n.get_mpz_t());
  const mp_limb_t* limbs = mpz_limbs_read(n.get_mpz_t());
  const std::size_t bits = slot * GMP_NUMB_BITS;
  Int half, full;
  mpz_setbit(half.get_mpz_t(), bits - 1);
  mpz_setbit(full.get_mpz_t(), bits);
  std::vector<Int> out(slots);
  bool carry = false;
  for (std::size_t k = 0; k < slots; ++k) {
    Int u;
    const std::size_t lo = k * slot;
    if (lo < size) {
      mpz_import(u.get_mpz_t(), std::min(slot, size - lo), -1, sizeof(mp_limb_t), 0, 0, limbs + lo);
    }
    if (carry) u += 1;
    carry = u >= half;
    if (carry) u -= full;
    out[k] = sign < 0 ? Int(-u) : u;
  }
  return out;
}

std::vector<Int> kronecker_product(const Sparse& x, const Sparse& y, std::size_t top) {
  const std::size_t terms = std::min(x.size(), y.size());
  const std::size_t need = max_bits(x) + max_bits(y) + mpz_sizeinbase(Int(terms).get_mpz_t(), 2) + 2;
  const std::size_t slot = (need + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  const Int product = pack(x, slot, x.back().first + 1) * pack(y, slot, y.back().first + 1);
  return unpack(product, slot, top + 1);
}

}  // namespace

Poly<Rat> gcd_rational(const Poly<Rat>& a, const Poly<Rat>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return PolyQ(Rat(1));
  if (a == b) return a.monic();
  ZPoly r0 = to_integer(a), r1 = to_integer(b);

  // Coprime inputs are the common case. A prime not dividing either leading
  // coefficient can only raise the gcd degree, so degree 0 mod p settles it.
  std::optional<std::size_t> bound;
  for (u64 p : {4294967291ULL, 4294967279ULL}) {
    if (mod_of(r0.back(), p) == 0 || mod_of(r1.back(), p) == 0) continue;
    bound = modular_gcd_degree(r0, r1, p);
    if (*bound == 0) return PolyQ(Rat(1));
    break;
  }
  // the other common case: the smaller input divides the larger one
  const PolyQ& small = a.deg() <= b.deg() ? a : b;
  const PolyQ& large = a.deg() <= b.deg() ? b : a;
  if (bound && *bound == small.deg() && divides(small, large)) return small.monic();

  if (r0.size() < r1.size()) std::swap(r0, r1);
  while (!r1.empty()) {
    if (r1.size() == 1) return PolyQ(Rat(1));
    ZPoly r2 = pseudo_remainder(r0, r1);
    r0 = std::move(r1);
    r1 = primitive(std::move(r2));
  }
  std::vector<PolyQ::Term> terms;
  for (std::size_t i = 0; i < r0.size(); ++i) {
    if (r0[i] != 0) terms.push_back({i, make_rat(r0[i], r0.back())});
  }
  return PolyQ::from_terms(std::move(terms));
}

Poly<Rat> multiply_rational(const Poly<Rat>& a, const Poly<Rat>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<Rat>();
  const auto [x, dx] = clear_denominators(a);
  const auto [y, dy] = clear_denominators(b);
  const Int den = dx * dy;
  const std::size_t top = a.deg() + b.deg();
  std::vector<Poly<Rat>::Term> terms;
  auto emit = [&](std::size_t exp, const Int& c) {
    if (c != 0) terms.push_back({exp, make_rat(c, den)});
  };
  if (x.size() >= 24 && y.size() >= 24 && 2 * top <= 3 * (x.size() + y.size())) {
    const std::vector<Int> acc = kronecker_product(x, y, top);
    for (std::size_t e = 0; e <= top; ++e) emit(e, acc[e]);
  } else if (top <= 4 * (x.size() * y.size()) + 64) {
    std::vector<Int> acc(top + 1, Int(0));
    for (const auto& [ei, ci] : x) {
      for (const auto& [ej, cj] : y) mpz_addmul(acc[ei + ej].get_mpz_t(), ci.get_mpz_t(), cj.get_mpz_t());
    }
    for (std::size_t e = 0; e <= top; ++e) emit(e, acc[e]);
  } else {
    std::map<std::size_t, Int> acc;
    for (const auto& [ei, ci] : x) {
      for (const auto& [ej, cj] : y) {
        Int& slot = acc[ei + ej];
        mpz_addmul(slot.get_mpz_t(), ci.get_mpz_t(), cj.get_mpz_t());
      }
    }
    for (const auto& [e, c] : acc) emit(e, c);
  }
  return Poly<Rat>::from_canonical(std::move(terms));
}

}  // namespace sosq
