#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "sosq/error.hpp"
#include "sosq/roots.hpp"
#include "sosq/text.hpp"

using namespace sosq;

namespace {

PolyQ P(const char* s) { return parse_poly_x(s); }
RatFuncQ R(const char* s) { return parse_x_function(s); }

template <class Fn>
Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("polynomials are sparse and canonical") {
  PolyQ p = PolyQ::from_terms({{3, Rat(1)}, {0, Rat(2)}, {3, Rat(-1)}, {1, Rat(0)}});
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0].exp == 0);
  CHECK_FALSE(PolyQ().degree().has_value());
  CHECK(PolyQ().degree() < PolyQ(Rat(1)).degree());
  CHECK(P("x^5 + x").degree() == 5u);
  CHECK(P("x^5 + x").low_degree() == 1);
  CHECK(PolyQ::variable == 'x');
  CHECK(PolyQx::variable == 'y');
  CHECK(P("x^2 + 3*x").derivative() == P("2*x + 3"));
  CHECK(P("x^2 - 1").eval(Rat(3)) == 8);
}

TEST_CASE("divmod examples") {
  auto [q1, r1] = divmod(P("x^3 + 2*x + 1"), P("x^2 + 1"));
  CHECK(q1 == P("x"));
  CHECK(r1 == P("x + 1"));
  auto [q2, r2] = divmod(P("x^2"), P("x^3"));
  CHECK(q2.is_zero());
  CHECK(r2 == P("x^2"));
  auto [q3, r3] = divmod(P("x^2 - 1"), P("x - 1"));
  CHECK(q3 == P("x + 1"));
  CHECK(r3.is_zero());
  CHECK(code_of([] { divmod(P("x"), PolyQ()); }) == Errc::DivisionByZero);
}

TEST_CASE("gcd examples") {
  CHECK(gcd(P("x^2 - 1"), P("x^2 - 2*x + 1")) == P("x - 1"));
  CHECK(gcd(P("3*x^2 + 6"), PolyQ()) == P("x^2 + 2"));
  CHECK(gcd(P("x^2 + 1"), P("x^2 + 2")) == P("1"));
  CHECK(code_of([] { gcd(PolyQ(), PolyQ()); }) == Errc::BothZero);
  CHECK(lcm(P("x^2 - 1"), P("x - 1")) == P("x^2 - 1"));
}

template <class F>
void check_division_identities(oracle::Rng& rng) {
  for (int i = 0; i < 1000; ++i) {
    auto a = oracle::random_poly<F>(rng, 5);
    auto b = oracle::random_nonzero_poly<F>(rng, 3);
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());

    if (a.is_zero()) continue;
    auto g = gcd(a, b);
    CHECK(g.is_monic());
    CHECK(divides(g, a));
    CHECK(divides(g, b));
    // planted common factor survives
    auto c = oracle::random_nonzero_poly<F>(rng, 2);
    auto g2 = gcd(a * c, b * c);
    CHECK(divides(c.monic(), g2));
    CHECK(g2 == (g * c).monic());
  }
}

TEST_CASE("division identities over Q") {
  oracle::Rng rng(101);
  check_division_identities<Rat>(rng);
}

TEST_CASE("division identities over Q(x)") {
  oracle::Rng rng(202);
  check_division_identities<RatFuncQ>(rng);
}

TEST_CASE("rational functions stay reduced with monic denominators") {
  RatFuncQ f(P("2*x^2 - 2"), P("4*x - 4"));
  CHECK(f.num() == P("1/2*x + 1/2"));
  CHECK(f.den() == P("1"));
  RatFuncQ g(P("x"), P("-2*x^2 + 2"));
  CHECK(g.den().is_monic());
  CHECK(g.num() == P("-1/2*x"));
  CHECK_THROWS_AS(RatFuncQ(P("1"), PolyQ()), Error);
  CHECK_THROWS_AS(RatFuncQ().inverse(), Error);

  oracle::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    RatFuncQ a = oracle::random_ratfuncq(rng, 3), b = oracle::random_ratfuncq(rng, 3);
    RatFuncQ s = a + b, p = a * b;
    CHECK(s - b == a);
    CHECK(gcd(s.num().is_zero() ? PolyQ(Rat(1)) : s.num(), s.den()) == P("1"));
    CHECK(p.den().is_monic());
    if (!b.is_zero()) CHECK(p / b == a);
  }
}

TEST_CASE("rational roots examples") {
  CHECK(rational_roots(P("x^2 - 2")).empty());
  CHECK(rational_roots(P("x^2 - x")) == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(rational_roots(P("2*x - 3")) == std::vector<Rat>{Rat(3, 2)});
  CHECK(code_of([] { rational_roots(PolyQ()); }) == Errc::ZeroPolynomial);

  auto m = rational_roots_with_multiplicity(P("x^3*(x - 1/2)^2*(x^2 + 1)"));
  REQUIRE(m.size() == 2);
  CHECK(m[0] == RationalRoot{Rat(0), 3});
  CHECK(m[1] == RationalRoot{Rat(1, 2), 2});
}

TEST_CASE("rational roots against exhaustive candidates") {
  oracle::Rng rng(31);
  for (int i = 0; i < 400; ++i) {
    PolyQ g = oracle::random_nonzero_polyq(rng, 4);
    // plant a few rational roots
    const long planted = oracle::uniform(rng, 0, 2);
    for (long k = 0; k < planted; ++k) g = g * linear_factor(oracle::random_rat(rng, 4, 3));
    std::set<Rat> expect = g.is_constant() ? std::set<Rat>{} : oracle::rational_roots_by_candidates(g);
    auto got = rational_roots(g);
    CHECK(std::set<Rat>(got.begin(), got.end()) == expect);
    for (const Rat& r : got) CHECK(sgn(g.eval(r)) == 0);
  }
}

TEST_CASE("rational roots with large coefficients") {
  PolyQ g = P("(123456789*x - 987654321)*(x^2 + 1)*(7*x + 11)^2");
  auto m = rational_roots_with_multiplicity(g);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == RationalRoot{Rat(-11, 7), 2});
  CHECK(m[1] == RationalRoot{make_rat(Int(987654321), Int(123456789)), 1});
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_rational_between(Rat(1, 3), Rat(1, 2)) == Rat(1, 2));
  CHECK(simplest_rational_between(Rat(3, 10), Rat(4, 10)) == Rat(1, 3));
  CHECK(simplest_rational_between(Rat(-7, 3), Rat(-2)) == Rat(-2));
  CHECK(simplest_rational_between(Rat(-1), Rat(1)) == Rat(0));
}

TEST_CASE("square test examples") {
  CHECK(square_test(P("x^2 + 2*x + 1")));
  CHECK_FALSE(square_test(P("1 + x^2")));
  CHECK(square_test(R("4*x^2/(x^2 + 2*x + 1)")));
  CHECK(*sqrt_exact(R("4*x^2/(x^2 + 2*x + 1)")) * *sqrt_exact(R("4*x^2/(x^2 + 2*x + 1)")) ==
        R("4*x^2/(x^2 + 2*x + 1)"));
  CHECK_FALSE(square_test(P("2*x^2")));
  CHECK_FALSE(square_test(P("-x^2")));
  CHECK(square_test(PolyQ()));
}

TEST_CASE("square roots are explicit") {
  oracle::Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    RatFuncQ h = oracle::random_ratfuncq(rng, 3);
    auto root = sqrt_exact(h * h);
    REQUIRE(root.has_value());
    CHECK(*root * *root == h * h);
    RatFuncQ k(oracle::random_nonconstant_polyq(rng, 3));
    // h^2 * k is a square only when k is
    if (!h.is_zero()) CHECK(square_test(h * h * k) == square_test(k));
  }
}

TEST_CASE("square test one level up") {
  // (x*y + 1/x)^2 in Q(x)(y)
  RatFuncQxy f = parse_element("(x*y + 1/x)^2");
  auto root = sqrt_exact(f);
  REQUIRE(root.has_value());
  CHECK(*root * *root == f);
  CHECK_FALSE(square_test(parse_element("x*y^2 + 1")));
  CHECK_FALSE(square_test(parse_element("x*y^2")));
}

TEST_CASE("fractional split") {
  std::vector<RatFuncQ> v{R("(x^3 + 2*x + 1)/(x^2 + 1)")};
  auto s = fractional_split(v);
  CHECK(s.polynomial[0] == P("x"));
  CHECK(s.proper[0] == R("(x + 1)/(x^2 + 1)"));

  std::vector<RatFuncQ> w{R("1/x"), R("x")};
  auto t = fractional_split(w);
  CHECK(t.polynomial[0].is_zero());
  CHECK(t.polynomial[1] == P("x"));
  CHECK(t.proper[0] == R("1/x"));
  CHECK(t.proper[1].is_zero());

  oracle::Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    std::vector<RatFuncQ> u;
    for (int k = 0; k < 3; ++k) u.push_back(oracle::random_ratfuncq(rng, 4));
    auto sp = fractional_split(u);
    for (std::size_t k = 0; k < u.size(); ++k) {
      CHECK(RatFuncQ(sp.polynomial[k]) + sp.proper[k] == u[k]);
      CHECK(sp.proper[k].is_proper());
    }
  }
}

TEST_CASE("squarefree even part") {
  auto a = squarefree_even_part(P("x^2*(x^2 + 1)"));
  CHECK(a.h == P("x"));
  CHECK(a.rest == P("x^2 + 1"));
  auto b = squarefree_even_part(P("x^2 + 1"));
  CHECK(b.h == P("1"));
  CHECK(b.rest == P("x^2 + 1"));
  auto c = squarefree_even_part(P("x^3"));
  CHECK(c.h == P("x"));
  CHECK(c.rest == P("x"));
  CHECK(code_of([] { squarefree_even_part(PolyQ()); }) == Errc::ZeroPolynomial);

  oracle::Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    PolyQ f = oracle::random_nonzero_polyq(rng, 3);
    for (long k = oracle::uniform(rng, 0, 4); k > 0; --k) f = f * linear_factor(oracle::random_rat(rng, 2, 2));
    auto e = squarefree_even_part(f);
    CHECK(e.h * e.h * e.rest == f);
    for (const auto& r : rational_roots_with_multiplicity(e.rest)) CHECK(r.multiplicity < 2);
  }
}

TEST_CASE("common denominator") {
  std::vector<RatFuncQ> v{R("1/(x^2 - 1)"), R("x/(2*x + 2)"), R("x")};
  CHECK(common_denominator(v) == P("x^2 - 1"));
}

// long products with wide coefficients take the packed-integer path
TEST_CASE("products of long polynomials match term-by-term expansion") {
  oracle::Rng rng(3);
  auto gen = [&] {
    std::vector<PolyQ::Term> terms;
    const auto d = static_cast<std::size_t>(oracle::uniform(rng, 20, 80));
    for (std::size_t e = 0; e <= d; ++e) {
      if (oracle::uniform(rng, 0, 5) == 0) continue;
      Int n = 1;
      for (long k = oracle::uniform(rng, 0, 15); k > 0; --k) n = n * 1048576 + oracle::uniform(rng, 0, 1048575);
      if (oracle::uniform(rng, 0, 1)) n = -n;
      terms.push_back({e, make_rat(n, Int(oracle::uniform(rng, 1, 9)))});
    }
    return PolyQ::from_terms(std::move(terms));
  };
  for (int t = 0; t < 150; ++t) {
    const PolyQ a = gen(), b = gen();
    std::map<std::size_t, Rat> acc;
    for (const auto& p : a.terms()) {
      for (const auto& q : b.terms()) acc[p.exp + q.exp] += p.coeff * q.coeff;
    }
    std::vector<PolyQ::Term> terms;
    for (const auto& [e, c] : acc) terms.push_back({e, c});
    CHECK(a * b == PolyQ::from_terms(std::move(terms)));
  }
}
