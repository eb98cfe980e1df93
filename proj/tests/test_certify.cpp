#include <doctest.h>

#include "oracles.hpp"
#include "sosq/certify.hpp"
#include "sosq/error.hpp"
#include "sosq/text.hpp"

using namespace sosq;

namespace {

RatFuncQxy E(const char* s) { return parse_element(s); }
PolyQ P(const char* s) { return parse_poly_x(s); }
RatFuncQ R(const char* s) { return parse_x_function(s); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMatrix m;
  for (const auto& r : rows) {
    std::vector<Rat> row;
    for (long v : r) row.push_back(Rat(v));
    m.push_back(row);
  }
  return m;
}

std::vector<Monomial> x_monomials(std::size_t k) {
  std::vector<Monomial> m;
  for (std::size_t i = 0; i < k; ++i) m.push_back({i, 0});
  return m;
}

}  // namespace

TEST_CASE("gram_to_sos examples") {
  SUBCASE("rank one") {
    GramInput g{Ambient::Qx, parse_bipoly("x^2 + 2*x + 1"), x_monomials(2), mat({{1, 1}, {1, 1}})};
    SosRep rep = gram_to_sos(g);
    CHECK(rep.entries() == std::vector<RatFuncQxy>{E("x + 1")});
  }
  SUBCASE("pivot 3 spread over three squares") {
    GramInput g{Ambient::Qx, parse_bipoly("x^4 + 3*x^2 + 1"), x_monomials(3), mat({{1, 0, 0}, {0, 3, 0}, {0, 0, 1}})};
    SosRep rep = gram_to_sos(g);
    CHECK(rep.entries() == std::vector<RatFuncQxy>{E("1"), E("x"), E("x"), E("x"), E("x^2")});
    CHECK(verify_rep(rep).ok);
  }
  SUBCASE("indefinite") {
    GramInput g{Ambient::Qx, parse_bipoly("2*x"), x_monomials(2), mat({{0, 1}, {1, 0}})};
    CHECK(code_of([&] { gram_to_sos(g); }) == Errc::NotPSD);
  }
  SUBCASE("target mismatch") {
    GramInput g{Ambient::Qx, parse_bipoly("x^2 + 1"), x_monomials(2), mat({{1, 1}, {1, 1}})};
    CHECK(code_of([&] { gram_to_sos(g); }) == Errc::TargetMismatch);
  }
  SUBCASE("bivariate monomials") {
    std::vector<Monomial> m{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    GramInput g{Ambient::Qxy, parse_bipoly("x^2*y^2 + x^2 + y^2 + 1"), m,
                mat({{1, 0, 0, -1}, {0, 1, 1, 0}, {0, 1, 1, 0}, {-1, 0, 0, 1}})};
    SosRep rep = gram_to_sos(g);
    CHECK(verify_rep(rep).ok);
    CHECK(rep.length() == 2);
  }
}

TEST_CASE("LDL reconstructs the permuted matrix") {
  oracle::Rng rng(600);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = static_cast<std::size_t>(oracle::uniform(rng, 1, 6));
    RatMatrix g = oracle::random_psd(rng, k);
    LdlResult ldl = ldl_decompose(g);
    for (const Rat& d : ldl.diag) CHECK(sgn(d) >= 0);
    // pivots are taken in decreasing order
    for (std::size_t i = 1; i < k; ++i) CHECK(ldl.diag[i] <= ldl.diag[i - 1]);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        Rat acc(0);
        for (std::size_t r = 0; r < k; ++r) acc += ldl.lower[i][r] * ldl.diag[r] * ldl.lower[j][r];
        CHECK(acc == g[ldl.perm[i]][ldl.perm[j]]);
      }
    }
    // the length is the sum of q_length over the nonzero pivots
    GramInput in{Ambient::Qx, gram_form_value(x_monomials(k), g), x_monomials(k), g};
    SosRep rep = gram_to_sos(in);
    unsigned expected = 0;
    for (const Rat& d : ldl.diag) {
      if (sgn(d) > 0) expected += *q_length(d).value;
    }
    CHECK(verify_rep(rep).ok);
    CHECK(rep.length() == expected);
  }
}

TEST_CASE("negative definite directions are refused") {
  oracle::Rng rng(601);
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = static_cast<std::size_t>(oracle::uniform(rng, 2, 5));
    RatMatrix g = oracle::random_psd(rng, k);
    const std::size_t i = static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<long>(k) - 1));
    g[i][i] -= g[i][i] + 1;
    CHECK(code_of([&] { ldl_decompose(g); }) == Errc::NotPSD);
  }
  CHECK(code_of([] { ldl_decompose(mat({{1, 2}, {3, 4}})); }) == Errc::InvalidArgument);
}

TEST_CASE("hyperelliptic square test") {
  CHECK_FALSE(hyperelliptic_square_test(R("1 + x^2"), P("x^3 - x")));
  CHECK(hyperelliptic_square_test(R("x^6"), P("x^3 - x")));
  CHECK(hyperelliptic_square_test(R("x^6"), P("x^2 + 7")));
  CHECK(hyperelliptic_square_test(R("x^3 - x"), P("x^3 - x")));
  CHECK_FALSE(hyperelliptic_square_test(R("x"), P("x^3 - x")));
  CHECK(code_of([] { hyperelliptic_square_test(R("x"), P("3")); }) == Errc::InvalidArgument);

  oracle::Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    RatFuncQ f = oracle::random_ratfuncq(rng, 3);
    if (is_zero(f)) continue;
    PolyQ k = oracle::random_nonconstant_polyq(rng, 3);
    CHECK(hyperelliptic_square_test(f * f, k));
    CHECK(hyperelliptic_square_test(f * f * RatFuncQ(k), k));
  }
}

TEST_CASE("fourth powers") {
  CHECK_FALSE(fourth_power_linear_obstruction(Rat(7)));
  CHECK(fourth_power_linear_obstruction(Rat(0)));
  CHECK_FALSE(fourth_power_linear_obstruction(Rat(-1)));
  for (int num = -40; num <= 80; ++num) {
    for (int den : {1, 2, 3, 7}) {
      const Rat m = make_rat(Int(num), Int(den));
      CHECK(fourth_power_linear_obstruction(m) == (m >= 0 && m <= 6));
    }
  }
  const std::vector<PolyQ> ends{P("x"), P("1")};
  CHECK(verify_fourth_power_rep(P("x^4 + 1"), ends));
  CHECK_FALSE(verify_fourth_power_rep(P("x^4 + 6*x^2 + 1"), ends));
  const std::vector<PolyQ> twice{P("x"), P("x")};
  CHECK(verify_fourth_power_rep(P("2*x^4"), twice));
  // 2(x^4 + 6x^2 + 1) = (x + 1)^4 + (x - 1)^4
  const std::vector<PolyQ> six{P("x + 1"), P("x - 1")};
  CHECK(verify_fourth_power_rep(P("2*x^4 + 12*x^2 + 2"), six));
}

TEST_CASE("length_certificate examples") {
  SUBCASE("seven") {
    auto c = length_certificate(Ambient::Q, E("7"), {});
    REQUIRE(c.upper);
    CHECK(c.upper->n == 4);
    CHECK(c.lower->n == 4);
    CHECK(c.lower->reason == LowerReason::QClassification);
    CHECK(c.exact);
    CHECK(verify_rep(c.upper->witness).ok);
  }
  SUBCASE("plane quartic") {
    std::vector<SosRep> reps{SosRep::checked(Ambient::Qxy, E("x^2*y^2 + x^2 + y^2 + 1"), {E("x*y - 1"), E("x + y")})};
    auto c = length_certificate(Ambient::Qxy, E("x^2*y^2 + x^2 + y^2 + 1"), reps);
    CHECK(c.upper->n == 2);
    CHECK(c.lower->n == 2);
    CHECK(c.lower->reason == LowerReason::NotASquare);
    CHECK(c.exact);
  }
  SUBCASE("a square") {
    std::vector<SosRep> reps{SosRep::checked(Ambient::Qxy, E("(x + y)^2"), {E("x + y")})};
    auto c = length_certificate(Ambient::Qxy, E("(x + y)^2"), reps);
    CHECK(c.upper->n == 1);
    CHECK(c.exact);
  }
  SUBCASE("not sums of squares") {
    auto neg = length_certificate(Ambient::Q, E("-3"), {});
    CHECK(neg.not_sos);
    CHECK_FALSE(neg.upper);
    auto poly = length_certificate(Ambient::Qxy, E("x*y"), {});
    CHECK(poly.not_sos);
    CHECK(poly.lower->reason == LowerReason::Nonnegativity);
  }
  SUBCASE("zero") {
    auto z = length_certificate(Ambient::Qx, E("0"), {});
    CHECK(z.exact);
    CHECK(z.upper->n == 0);
  }
  SUBCASE("bad representations") {
    auto bad = SosRep::unchecked(Ambient::Qx, E("x^2 + 1"), DiagForm::sum_of_squares(2), {E("x"), E("2")});
    std::vector<SosRep> reps{bad};
    CHECK(code_of([&] { length_certificate(Ambient::Qx, E("x^2 + 1"), reps); }) == Errc::IdentityViolated);
  }
  SUBCASE("descent is applied to univariate representations") {
    std::vector<SosRep> reps{SosRep::checked(Ambient::Qx, E("x^2 + 1"),
                                             {E("(3*x - x^3)/(1 + x^2)"), E("(1 - 3*x^2)/(1 + x^2)")})};
    auto c = length_certificate(Ambient::Qx, E("x^2 + 1"), reps);
    REQUIRE(c.upper);
    for (const auto& e : c.upper->witness.entries()) CHECK(is_bipoly(e));
    CHECK(c.exact);
  }
}

TEST_CASE("certificates are monotone in the known representations") {
  oracle::Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    std::vector<RatFuncQxy> p;
    for (int k = 0; k < 4; ++k) p.push_back(to_field(oracle::random_bipoly(rng, 2, 2)));
    RatFuncQxy target = oracle::sum_of_weighted_squares({1, 1, 1, 1}, p);
    if (target.is_zero()) continue;
    std::vector<SosRep> reps;
    std::optional<std::size_t> prev;
    // longer padded representations first, then the plain one
    for (int pad = 2; pad >= 0; --pad) {
      std::vector<RatFuncQxy> v = p;
      for (int z = 0; z < pad; ++z) v.push_back(to_field(Rat(0)));
      reps.push_back(SosRep::checked(Ambient::Qxy, target, v));
      auto c = length_certificate(Ambient::Qxy, target, reps);
      REQUIRE(c.upper);
      REQUIRE(c.lower);
      CHECK(c.lower->n <= c.upper->n);
      if (prev) CHECK(c.upper->n <= *prev);
      prev = c.upper->n;
      CHECK(verify_rep(c.upper->witness).ok);
    }
  }
}

TEST_CASE("user lower bounds") {
  std::vector<SosRep> reps{SosRep::checked(Ambient::Qxy, E("x^2 + y^2 + 1"), {E("x"), E("y"), E("1")})};
  CertifyOptions opt{LowerBound{3, LowerReason::UserSupplied}};
  auto c = length_certificate(Ambient::Qxy, E("x^2 + y^2 + 1"), reps, opt);
  CHECK(c.lower->n == 3);
  CHECK(c.exact);
  CertifyOptions too_big{LowerBound{4, LowerReason::UserSupplied}};
  CHECK(code_of([&] { length_certificate(Ambient::Qxy, E("x^2 + y^2 + 1"), reps, too_big); }) ==
        Errc::InvalidArgument);
}
