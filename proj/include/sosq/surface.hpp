#pragma once

// Sums of squares on the plane A^1 x A^1 over Q: turning a representation with
// arbitrary denominators into one whose denominator is a polynomial in x with
// no rational zero, without changing the number of squares.

#include <vector>

#include "sosq/descent.hpp"
#include "sosq/forms.hpp"

namespace sosq {

/// f = h^2 * rest, where h in Q[x] collects the even part of every vertical
/// line x = r (r rational) contained in the zero set of f.
struct VerticalSplit {
  PolyQ h;
  BiPolyQ rest;
};
VerticalSplit extract_vertical(const BiPolyQ& f);

/// A representation of f whose entries share the denominator g in Q[x], where
/// g has no rational root, and the vertical factor h that was split off.
struct RegularRep {
  SosRep rep;
  PolyQ g;
  PolyQ h;
  std::vector<std::size_t> descent_degrees;  // y-denominator degree per descent step
};

RegularRep clear_to_regular(const BiPolyQ& f, const SosRep& rep,
                            const DescentObserver<RatFuncQ>& observer = {});

/// Multiplies a representation of r through by the square of its common
/// denominator g: r*g^2 = sum a_i (g e_i)^2 with polynomial entries.
struct ScaledRep {
  BiPolyQ element;
  SosRep rep;
  BiPolyQ g;
};
ScaledRep scale_to_polynomial(const SosRep& rep);

}  // namespace sosq
