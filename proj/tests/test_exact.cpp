#include <doctest.h>

#include "oracles.hpp"
#include "sosq/error.hpp"
#include "sosq/exact.hpp"

using namespace sosq;

namespace {

Rat q(const char* s) { return Rat(s); }

unsigned len(const Rat& r) { return *q_length(r).value; }

Rat sum_squares(const std::vector<Rat>& v) {
  Rat acc = 0;
  for (const auto& c : v) acc += c * c;
  return acc;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  Rat r = make_rat(Int(6), Int(-4));
  CHECK(r.get_num() == -3);
  CHECK(r.get_den() == 2);
  CHECK(make_rat(Int(0), Int(7)).get_den() == 1);
  CHECK_THROWS_AS(make_rat(Int(1), Int(0)), Error);
}

TEST_CASE("round half toward zero") {
  CHECK(round_half_toward_zero(q("1/2")) == 0);
  CHECK(round_half_toward_zero(q("-1/2")) == 0);
  CHECK(round_half_toward_zero(q("3/2")) == 1);
  CHECK(round_half_toward_zero(q("-3/2")) == -1);
  CHECK(round_half_toward_zero(q("7/5")) == 1);
  CHECK(round_half_toward_zero(q("-8/5")) == -2);
  CHECK(round_half_toward_zero(q("4")) == 4);

  oracle::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    Rat t = oracle::random_rat(rng, 200, 40);
    Rat diff = t - Rat(round_half_toward_zero(t));
    CHECK(abs(diff) <= q("1/2"));
  }
}

TEST_CASE("q_length on the documented values") {
  CHECK(len(Rat(7)) == 4);
  CHECK(len(Rat(0)) == 0);
  CHECK(len(Rat(9)) == 1);
  CHECK(len(q("1/2")) == 2);
  CHECK_FALSE(q_length(Rat(-3)).is_sos());
  CHECK_FALSE(q_length(q("-1/9")).is_sos());
  CHECK(len(q("7/4")) == 4);
  CHECK(len(q("2/7")) == 3);  // 14 = 9 + 4 + 1
}

TEST_CASE("q_length agrees with a rational square search") {
  // length(a/b) is computed from a*b; the search sees denominators up to 12
  for (long a = 0; a <= 30; ++a) {
    for (long b = 1; b <= 6; ++b) {
      Rat r = make_rat(Int(a), Int(b));
      auto found = oracle::rational_length_search(r, 12);
      REQUIRE(found.has_value());
      CHECK_MESSAGE(len(r) == *found, "q = ", r.get_str());
    }
  }
}

TEST_CASE("integer lengths match the brute-force table") {
  const auto table = oracle::integer_lengths(3000);
  for (unsigned n = 0; n <= 3000; ++n) CHECK(int_length(Int(n)) == table[n]);
}

TEST_CASE("large integers use the criteria") {
  Int big("1000000000000000000000000");  // (10^12)^2
  CHECK(int_length(big) == 1);
  CHECK(int_length(big * 7) == 4);
  CHECK(int_length(big * 3) == 3);
  CHECK(int_length(big * 2 + 1) == 3);  // divisible by 3 exactly once
  // product of two primes = 1 (mod 4) near 2^40: two squares, but deciding
  // that needs a factorization above 64 bits
  Int hard("1208925819876312942130541");
  try {
    int_length(hard);
    FAIL("expected InputTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InputTooLarge);
  }
}

TEST_CASE("witnesses sum back exactly and have minimal size") {
  oracle::Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    Rat r = abs(oracle::random_rat(rng, 1000, 50));
    auto w = q_sos_witness(r);
    CHECK(sum_squares(w) == r);
    CHECK(w.size() == len(r));
  }
  for (unsigned n = 0; n <= 1000; ++n) {
    auto w = int_sos_witness(Int(n));
    Int acc = 0;
    for (const auto& c : w) acc += c * c;
    CHECK(acc == n);
  }
  CHECK(q_sos_witness(Rat(7)).size() == 4);
  CHECK_THROWS_AS(q_sos_witness(Rat(-1)), Error);
}

TEST_CASE("factorization of 64-bit integers") {
  auto f = factor_u64(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
  CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
  CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});

  const std::uint64_t p = 4294967291ULL, r = 4294967279ULL;  // primes below 2^32
  auto g = factor_u64(p * r);
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == r);
  CHECK(g[1].first == p);
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_FALSE(is_prime_u64(18446744073709551555ULL));

  oracle::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t n = rng() >> 1 | 1;
    std::uint64_t prod = 1;
    for (auto [pp, e] : factor_u64(n)) {
      CHECK(is_prime_u64(pp));
      for (unsigned k = 0; k < e; ++k) prod *= pp;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("exact rational square roots") {
  CHECK(*sqrt_exact(q("9/4")) == q("3/2"));
  CHECK_FALSE(sqrt_exact(q("2")).has_value());
  CHECK_FALSE(sqrt_exact(q("-4")).has_value());
  CHECK(*sqrt_exact(Rat(0)) == 0);
}

TEST_CASE("integer three-square descent") {
  SUBCASE("documented rational start") {
    std::vector<Rat> v{q("-1/5"), q("7/5"), Rat(2)};
    std::vector<Int> trace;
    auto w = int_three_square_descent(Int(6), v, &trace);
    REQUIRE(w.size() == 3);
    CHECK(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] == 6);
    std::vector<Int> sorted;
    for (const auto& c : w) sorted.push_back(abs(c));
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<Int>{1, 1, 2});
    REQUIRE(trace.size() >= 2);
    CHECK(trace.front() == 5);
    CHECK(trace.back() == 1);
  }
  SUBCASE("integral start is returned unchanged") {
    std::vector<Rat> v{Rat(1), Rat(2), Rat(0)};
    auto w = int_three_square_descent(Int(5), v);
    CHECK(w == std::vector<Int>{1, 2, 0});
  }
  SUBCASE("identity is checked") {
    std::vector<Rat> v{q("1/2"), q("1/2"), Rat(0)};
    try {
      int_three_square_descent(Int(2), v);
      FAIL("expected IdentityViolated");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::IdentityViolated);
    }
  }
  SUBCASE("four coordinates are refused") {
    std::vector<Rat> v{Rat(1), Rat(1), Rat(1), Rat(1)};
    try {
      int_three_square_descent(Int(4), v);
      FAIL("expected UnsupportedFormRank");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnsupportedFormRank);
    }
  }
  SUBCASE("fewer coordinates work") {
    std::vector<Rat> v{q("3/5"), q("4/5")};
    auto w = int_three_square_descent(Int(1), v);
    CHECK(w[0] * w[0] + w[1] * w[1] == 1);
  }
}

TEST_CASE("integer descent denominators strictly decrease") {
  const auto table = oracle::integer_lengths(400);
  oracle::Rng rng(17);
  for (unsigned n = 1; n <= 400; ++n) {
    if (table[n] > 3) continue;
    auto base = oracle::integer_witness(n, table);
    std::vector<Rat> v(3, Rat(0));
    for (std::size_t i = 0; i < base.size(); ++i) v[i] = Rat(base[i]);
    auto rot = oracle::quaternion_rotation(oracle::uniform(rng, -4, 4), oracle::uniform(rng, -4, 4),
                                           oracle::uniform(rng, -4, 4), oracle::uniform(rng, 1, 4));
    v = oracle::apply(rot, v);
    std::vector<Int> trace;
    auto w = int_three_square_descent(Int(n), v, &trace);
    CHECK(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] == n);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] < trace[i - 1]);
  }
}
