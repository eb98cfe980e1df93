#pragma once

#include <vector>

#include "sosq/poly.hpp"

namespace sosq {

struct RationalRoot {
  Rat value;
  unsigned multiplicity;
  friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

/// Rational roots of a nonzero polynomial, ascending, with multiplicities.
std::vector<RationalRoot> rational_roots_with_multiplicity(const PolyQ& g);

/// Rational roots of a nonzero polynomial, ascending, each listed once.
std::vector<Rat> rational_roots(const PolyQ& g);

/// Scales p to integer coefficients with content 1 and positive leading
/// coefficient.
PolyQ primitive_integer_form(const PolyQ& p);

/// The fraction with the smallest denominator in the closed interval [lo, hi].
Rat simplest_rational_between(const Rat& lo, const Rat& hi);

/// f = h^2 * rest, where h is the largest monic product of rational linear
/// factors (x - r) whose square divides f.
struct EvenPart {
  PolyQ h;
  PolyQ rest;
};
EvenPart squarefree_even_part(const PolyQ& f);

/// x - r
PolyQ linear_factor(const Rat& r);

}  // namespace sosq
