#include "sosq/exact.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "sosq/error.hpp"

namespace sosq {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool fits_u64(const Int& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const Int& n) {
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Int from_u64(u64 v) {
  Int out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

bool is_three_square_excluded(Int n) {
  // n = 4^a (8b + 7)
  if (n == 0) return false;
  while (mpz_divisible_ui_p(n.get_mpz_t(), 4)) n /= 4;
  return mpz_fdiv_ui(n.get_mpz_t(), 8) == 7;
}

bool is_perfect_square(const Int& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

bool is_two_square(const Int& n) {
  if (n == 0) return true;
  if (fits_u64(n)) {
    for (auto [p, e] : factor_u64(to_u64(n))) {
      if (p % 4 == 3 && e % 2 == 1) return false;
    }
    return true;
  }
  // Strip small primes first so that large inputs are refused only when the
  // remaining cofactor really needs factoring.
  Int m = n;
  m >>= mpz_scan1(m.get_mpz_t(), 0);
  for (unsigned long p = 3; p < (1UL << 16) && m > 1; p += 2) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (p % 4 == 3 && e % 2 == 1) return false;
  }
  if (m == 1 || is_perfect_square(m)) return true;
  if (m % 4 == 3) return false;
  if (!fits_u64(m)) throw Error(Errc::InputTooLarge, "two-square test needs a factorization above 64 bits");
  return is_two_square(m);
}


Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

struct Gaussian {
  Int re, im;
};

Gaussian mul(const Gaussian& a, const Gaussian& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// a^2 + b^2 = p for a prime p = 1 (mod 4), by the Hermite-Serret reduction.
Gaussian split_prime(u64 p) {
  u64 root = 0;
  for (u64 c = 2;; ++c) {
    if (pow_mod(c, (p - 1) / 2, p) == p - 1) {
      root = pow_mod(c, (p - 1) / 4, p);
      break;
    }
  }
  u64 r0 = p, r1 = root;
  while (static_cast<u128>(r1) * r1 > p) {
    u64 t = r0 % r1;
    r0 = r1;
    r1 = t;
  }
  Int a = from_u64(r1);
  Int b = isqrt(from_u64(p) - a * a);
  return {a, b};
}

std::vector<Int> two_square_witness(const Int& n) {
  if (n == 0) return {Int(0), Int(0)};
  Gaussian acc{Int(1), Int(0)};
  Int scale = 1;
  for (auto [p, e] : factor_u64(to_u64(n))) {
    if (p == 2) {
      for (unsigned i = 0; i < e; ++i) acc = mul(acc, Gaussian{Int(1), Int(1)});
    } else if (p % 4 == 3) {
      for (unsigned i = 0; i < e / 2; ++i) scale *= from_u64(p);
    } else {
      Gaussian g = split_prime(p);
      for (unsigned i = 0; i < e; ++i) acc = mul(acc, g);
    }
  }
  Int a = abs(acc.re) * scale;
  Int b = abs(acc.im) * scale;
  return {a, b};
}

}  // namespace

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int round_half_toward_zero(const Rat& t) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  Rat frac = t - Rat(fl);
  int c = cmp(frac, Rat(1, 2));
  if (c < 0) return fl;
  if (c > 0) return fl + 1;
  return sgn(t) > 0 ? fl : Int(fl + 1);
}

std::optional<Rat> sqrt_exact(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!is_perfect_square(q.get_num()) || !is_perfect_square(q.get_den())) return std::nullopt;
  return make_rat(isqrt(q.get_num()), isqrt(q.get_den()));
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : bases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<u64> primes;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

unsigned int_length(const Int& n) {
  if (sgn(n) < 0) throw Error(Errc::InvalidArgument, "negative integer has no length");
  if (n == 0) return 0;
  if (is_perfect_square(n)) return 1;
  if (is_three_square_excluded(n)) return 4;
  return is_two_square(n) ? 2 : 3;
}

QLength q_length(const Rat& q) {
  if (sgn(q) < 0) return {};
  // a/b = (ab)/b^2, so the length of a/b equals that of ab
  return {int_length(Int(q.get_num() * q.get_den()))};
}

std::vector<Int> int_sos_witness(const Int& n) {
  switch (int_length(n)) {
    case 0:
      return {};
    case 1:
      return {isqrt(n)};
    case 2:
      return two_square_witness(n);
    case 3:
      for (Int b = isqrt(n); b >= 0; --b) {
        Int rest = n - b * b;
        if (is_two_square(rest)) {
          auto w = two_square_witness(rest);
          return {b, w[0], w[1]};
        }
      }
      break;
    default:
      for (Int a = isqrt(n); a >= 0; --a) {
        Int rest = n - a * a;
        if (!is_three_square_excluded(rest)) {
          auto w = int_sos_witness(rest);
          w.insert(w.begin(), a);
          return w;
        }
      }
      break;
  }
  throw Error(Errc::InternalDescentFailure, "witness search exhausted");
}

std::vector<Rat> q_sos_witness(const Rat& q) {
  if (sgn(q) < 0) throw Error(Errc::InvalidArgument, "negative rational is not a sum of squares");
  const Int& den = q.get_den();
  std::vector<Rat> out;
  for (const Int& w : int_sos_witness(Int(q.get_num() * den))) out.push_back(make_rat(w, den));
  return out;
}

namespace {

Int common_denominator(std::span<const Rat> v) {
  Int d = 1;
  for (const Rat& c : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

Rat sum_squares(std::span<const Rat> v) {
  Rat s = 0;
  for (const Rat& c : v) s += c * c;
  return s;
}

}  // namespace

std::vector<Int> int_three_square_descent(const Int& n, std::span<const Rat> v,
                                          std::vector<Int>* denominator_trace) {
  if (v.size() > 3) {
    throw Error(Errc::UnsupportedFormRank, "integer descent needs at most three squares");
  }
  if (sgn(n) < 0) throw Error(Errc::InvalidArgument, "n must be nonnegative");
  if (sum_squares(v) != Rat(n)) throw Error(Errc::IdentityViolated, "sum of squares differs from n");

  std::vector<Rat> cur(v.begin(), v.end());
  Int den = common_denominator(cur);
  // Each step multiplies the denominator by at most phi(u) <= 3/4.
  const std::size_t cap = 3 * mpz_sizeinbase(den.get_mpz_t(), 2) + 1;
  if (denominator_trace) denominator_trace->push_back(den);

  for (std::size_t iter = 0; den != 1; ++iter) {
    if (iter >= cap) throw Error(Errc::InternalDescentFailure, "iteration cap exceeded");
    std::vector<Rat> u(cur.size());
    Rat phi_u = 0, polar = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      u[i] = cur[i] - Rat(round_half_toward_zero(cur[i]));
      phi_u += u[i] * u[i];
      polar += cur[i] * u[i];
    }
    Rat t = 2 * polar / phi_u;
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= t * u[i];

    if (sum_squares(cur) != Rat(n)) {
      throw Error(Errc::InternalDescentFailure, "reflection changed the represented value");
    }
    Int next = common_denominator(cur);
    if (next >= den) throw Error(Errc::InternalDescentFailure, "denominator did not decrease");
    den = next;
    if (denominator_trace) denominator_trace->push_back(den);
  }

  std::vector<Int> out;
  out.reserve(cur.size());
  for (const Rat& c : cur) out.push_back(c.get_num());
  return out;
}

}  // namespace sosq
