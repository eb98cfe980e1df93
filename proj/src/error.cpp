#include "sosq/error.hpp"

namespace sosq {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::IdentityViolated: return "IdentityViolated";
    case Errc::InternalDescentFailure: return "InternalDescentFailure";
    case Errc::UnsupportedFormRank: return "UnsupportedFormRank";
    case Errc::InputTooLarge: return "InputTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::BothZero: return "BothZero";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::IsotropicVector: return "IsotropicVector";
    case Errc::CancellationFailure: return "CancellationFailure";
    case Errc::NotPSD: return "NotPSD";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::NotPolynomial: return "NotPolynomial";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sosq
