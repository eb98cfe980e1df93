#include "sosq/surface.hpp"

#include "sosq/roots.hpp"
#include "sosq/text.hpp"

namespace sosq {

namespace {

bool vanishes_on_line(const BiPolyQ& p, const Rat& r) {
  for (const auto& t : p.in_y().terms()) {
    if (!is_zero(t.coeff.num().eval(r))) return false;
  }
  return true;
}

void require_valid(const SosRep& rep) {
  auto v = verify_rep(rep);
  if (!v.ok) throw Error(Errc::IdentityViolated, "representation does not verify, residual " + format(v.residual));
}

}  // namespace

VerticalSplit extract_vertical(const BiPolyQ& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "vertical split of the zero polynomial");
  EvenPart even = squarefree_even_part(f.content_x());
  return {even.h, f.divided_by_x(even.h * even.h)};
}

RegularRep clear_to_regular(const BiPolyQ& f, const SosRep& rep, const DescentObserver<RatFuncQ>& observer) {
  if (!(rep.target() == to_field(f))) throw Error(Errc::IdentityViolated, "representation is for another target");
  require_valid(rep);
  const DiagForm& form = rep.form();

  if (f.is_zero()) {
    return {SosRep::checked(Ambient::Qxy, to_field(f), form, rep.entries()), PolyQ(Rat(1)), PolyQ(Rat(1)), {0}};
  }

  // (1) split off vertical lines: f = h^2 f1, entries e/h represent f1
  const VerticalSplit vertical = extract_vertical(f);
  const RatFuncQxy h_field = to_field(vertical.h);
  std::vector<RatFuncQxy> inner;
  inner.reserve(rep.length());
  for (const auto& e : rep.entries()) inner.push_back(e / h_field);

  // (2) descent over the base field Q(x) in the variable y
  const auto descended = cassels_descent<RatFuncQ>(form, vertical.rest.in_y(), inner, observer);

  // (3) common x-denominator: f1 g^2 = sum a_i f_i^2 with f_i in Q[x][y]
  PolyQ g(Rat(1));
  for (const auto& p : descended.entries) g = lcm(g, x_denominator(p));
  std::vector<BiPolyQ> numerators;
  numerators.reserve(descended.entries.size());
  for (const auto& p : descended.entries) numerators.push_back(BiPolyQ(p * PolyQx(RatFuncQ(g))));

  // (4) every line x = r with g(r) = 0 carries a zero of each f_i
  for (auto roots = rational_roots(g); !roots.empty(); roots = rational_roots(g)) {
    const Rat& r = roots.front();
    const PolyQ lin = linear_factor(r);
    for (auto& p : numerators) {
      if (!vanishes_on_line(p, r)) {
        throw Error(Errc::CancellationFailure, "numerator does not vanish on x = " + format(r));
      }
      p = p.divided_by_x(lin);
    }
    g = exact_div(g, lin);
  }

  // (5) reattach h
  std::vector<RatFuncQxy> entries;
  entries.reserve(numerators.size());
  const RatFuncQxy g_field = to_field(g);
  for (const auto& p : numerators) entries.push_back(to_field(p.times_x(vertical.h)) / g_field);

  RegularRep out{SosRep::checked(Ambient::Qxy, to_field(f), form, std::move(entries)), g, vertical.h,
                 descended.denominator_degrees};
  if (out.rep.length() != rep.length()) throw Error(Errc::InternalDescentFailure, "length changed");
  return out;
}

ScaledRep scale_to_polynomial(const SosRep& rep) {
  require_valid(rep);
  const BiPolyQ g = rep.denominator();
  const RatFuncQxy g_field = to_field(g);
  std::vector<RatFuncQxy> entries;
  entries.reserve(rep.length());
  for (const auto& e : rep.entries()) entries.push_back(e * g_field);
  const RatFuncQxy scaled = rep.target() * g_field * g_field;
  auto element = as_bipoly(scaled);
  if (!element) throw Error(Errc::InternalDescentFailure, "scaled target is not a polynomial");
  return {*element, SosRep::checked(rep.ambient(), scaled, rep.form(), std::move(entries)), g};
}

}  // namespace sosq
