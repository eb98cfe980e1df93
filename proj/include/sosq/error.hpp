#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sosq {

enum class Errc {
  IdentityViolated,
  InternalDescentFailure,
  UnsupportedFormRank,
  InputTooLarge,
  DivisionByZero,
  BothZero,
  ZeroPolynomial,
  RankMismatch,
  IsotropicVector,
  CancellationFailure,
  NotPSD,
  TargetMismatch,
  NotPolynomial,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

// Internal failures signal arithmetic bugs or corrupted invariants, as opposed
// to bad input. The CLI maps them to a distinct exit code.
constexpr bool is_internal_failure(Errc code) noexcept {
  return code == Errc::InternalDescentFailure || code == Errc::CancellationFailure;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sosq
