#pragma once

// Text syntax for exact polynomials and rational functions in x and y, such as
// `3/2*x^2*y - y + 1` or `(x*y - 1)/(x^2 + 1)`. Integer literals, the
// variables x and y, `+ - * / ^` and parentheses are accepted; floating point
// literals are rejected.

#include <string>
#include <string_view>

#include "sosq/bivariate.hpp"

namespace sosq {

RatFuncQxy parse_element(std::string_view text);
BiPolyQ parse_bipoly(std::string_view text);
RatFuncQ parse_x_function(std::string_view text);  // rejects y
PolyQ parse_poly_x(std::string_view text);  // rejects y
Rat parse_rat(std::string_view text);

std::string format(const Rat& c);
std::string format(const PolyQ& p);
std::string format(const BiPolyQ& p);
// "num" when the denominator is 1, "(num)/(den)" otherwise
std::string format(const RatFuncQxy& e);

}  // namespace sosq
