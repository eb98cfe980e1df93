#include "sosq/forms.hpp"

#include <string>

#include "sosq/text.hpp"

namespace sosq {

DiagForm::DiagForm(std::vector<Rat> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw Error(Errc::InvalidArgument, "form rank must be at least 1");
  for (const Rat& a : coeffs_) {
    if (sgn(a) <= 0) throw Error(Errc::InvalidArgument, "form coefficients must be positive rationals");
  }
}

DiagForm DiagForm::sum_of_squares(std::size_t rank) { return DiagForm(std::vector<Rat>(rank, Rat(1))); }

bool DiagForm::is_sum_of_squares() const {
  for (const Rat& a : coeffs_) {
    if (a != 1) return false;
  }
  return true;
}

std::string_view to_string(Ambient a) {
  switch (a) {
    case Ambient::Q: return "Q";
    case Ambient::Qx: return "Q[x]";
    case Ambient::Qxy: return "Q[x,y]";
  }
  return "?";
}

Ambient parse_ambient(std::string_view s) {
  if (s == "Q") return Ambient::Q;
  if (s == "Q[x]") return Ambient::Qx;
  if (s == "Q[x,y]") return Ambient::Qxy;
  throw Error(Errc::ParseError, "unknown ambient '" + std::string(s) + "'");
}

bool belongs_to(Ambient a, const RatFuncQxy& e) {
  switch (a) {
    case Ambient::Q: return is_rational_constant(e);
    case Ambient::Qx: return is_y_free(e);
    case Ambient::Qxy: return true;
  }
  return false;
}

SosRep::SosRep(Ambient ambient, RatFuncQxy target, DiagForm form, std::vector<RatFuncQxy> entries)
    : ambient_(ambient), target_(std::move(target)), form_(std::move(form)), entries_(std::move(entries)) {
  // The form of an empty representation (of zero) is never evaluated.
  if (!entries_.empty() && entries_.size() != form_.rank()) {
    throw Error(Errc::RankMismatch, "entry count differs from form rank");
  }
  if (!belongs_to(ambient_, target_)) throw Error(Errc::InvalidArgument, "target outside the ambient");
  for (const auto& e : entries_) {
    if (!belongs_to(ambient_, e)) throw Error(Errc::InvalidArgument, "entry outside the ambient");
  }
}

SosRep SosRep::unchecked(Ambient ambient, RatFuncQxy target, DiagForm form, std::vector<RatFuncQxy> entries) {
  return SosRep(ambient, std::move(target), std::move(form), std::move(entries));
}

SosRep SosRep::checked(Ambient ambient, RatFuncQxy target, DiagForm form, std::vector<RatFuncQxy> entries) {
  SosRep rep(ambient, std::move(target), std::move(form), std::move(entries));
  auto v = verify_rep(rep);
  if (!v.ok) throw Error(Errc::IdentityViolated, "nonzero residual " + format(v.residual));
  return rep;
}

SosRep SosRep::checked(Ambient ambient, RatFuncQxy target, std::vector<RatFuncQxy> entries) {
  DiagForm form = DiagForm::sum_of_squares(std::max<std::size_t>(entries.size(), 1));
  return checked(ambient, std::move(target), std::move(form), std::move(entries));
}

VerifyResult verify_rep(const SosRep& rep) {
  RatFuncQxy value;
  if (!rep.entries().empty()) value = eval_form(rep.form(), rep.entries());
  RatFuncQxy residual = rep.target() - value;
  return {residual.is_zero(), residual};
}

std::string_view to_string(LowerReason r) {
  switch (r) {
    case LowerReason::Trivial: return "Trivial";
    case LowerReason::NotASquare: return "NotASquare";
    case LowerReason::QClassification: return "QClassification";
    case LowerReason::Nonnegativity: return "Nonnegativity";
    case LowerReason::UserSupplied: return "UserSupplied";
  }
  return "?";
}

LowerReason parse_lower_reason(std::string_view s) {
  for (auto r : {LowerReason::Trivial, LowerReason::NotASquare, LowerReason::QClassification,
                 LowerReason::Nonnegativity, LowerReason::UserSupplied}) {
    if (to_string(r) == s) return r;
  }
  throw Error(Errc::ParseError, "unknown lower-bound reason '" + std::string(s) + "'");
}

}  // namespace sosq
