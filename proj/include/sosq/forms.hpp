#pragma once

// Diagonal quadratic forms with positive rational coefficients and exact
// sums-of-squares representation records.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sosq/bivariate.hpp"

namespace sosq {

/// <a_1, ..., a_N> with every a_i a positive rational. Positivity makes the
/// form anisotropic over Q, Q(x) and Q(x)(y).
class DiagForm {
 public:
  explicit DiagForm(std::vector<Rat> coefficients);
  static DiagForm sum_of_squares(std::size_t rank);

  std::size_t rank() const { return coeffs_.size(); }
  const std::vector<Rat>& coefficients() const { return coeffs_; }
  bool is_sum_of_squares() const;

  friend bool operator==(const DiagForm&, const DiagForm&) = default;

 private:
  std::vector<Rat> coeffs_;
};

/// sum a_i v_i^2
template <class T>
T eval_form(const DiagForm& form, std::span<const T> v) {
  if (v.size() != form.rank()) throw Error(Errc::RankMismatch, "vector length differs from form rank");
  if constexpr (is_rational_function<T>::value) {
    // one reduction over the shared denominator instead of one per term
    using F = typename T::Field;
    const auto c = to_common_denominator(std::vector<T>(v.begin(), v.end()));
    Poly<F> acc;
    for (std::size_t i = 0; i < v.size(); ++i) {
      acc += (c.numerators[i] * c.numerators[i]).scaled(from_rational<F>(form.coefficients()[i]));
    }
    return T(std::move(acc), c.denominator * c.denominator);
  }
  T acc = from_rational<T>(Rat(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    T sq(v[i] * v[i]);
    acc = T(acc + T(from_rational<T>(form.coefficients()[i]) * sq));
  }
  return acc;
}

/// sum a_i u_i v_i, so that polar_form(form, v, v) == eval_form(form, v)
template <class T>
T polar_form(const DiagForm& form, std::span<const T> u, std::span<const T> v) {
  if (u.size() != form.rank() || v.size() != form.rank()) {
    throw Error(Errc::RankMismatch, "vector length differs from form rank");
  }
  T acc = from_rational<T>(Rat(0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    T prod(u[i] * v[i]);
    acc = T(acc + T(from_rational<T>(form.coefficients()[i]) * prod));
  }
  return acc;
}

template <class T>
T eval_form(const DiagForm& form, const std::vector<T>& v) {
  return eval_form(form, std::span<const T>(v));
}
template <class T>
T polar_form(const DiagForm& form, const std::vector<T>& u, const std::vector<T>& v) {
  return polar_form(form, std::span<const T>(u), std::span<const T>(v));
}

enum class Ambient { Q, Qx, Qxy };

std::string_view to_string(Ambient a);
Ambient parse_ambient(std::string_view s);
// Whether an element of Q(x)(y) lives in the fraction field of the ambient ring.
bool belongs_to(Ambient a, const RatFuncQxy& e);

/// Representation target = sum a_i * entries_i^2. All values are stored as
/// elements of Q(x)(y), tagged with the ambient they come from.
class SosRep {
 public:
  // Throws IdentityViolated unless the identity holds exactly.
  static SosRep checked(Ambient ambient, RatFuncQxy target, DiagForm form, std::vector<RatFuncQxy> entries);
  static SosRep checked(Ambient ambient, RatFuncQxy target, std::vector<RatFuncQxy> entries);
  // No identity check; used for files under inspection by verify.
  static SosRep unchecked(Ambient ambient, RatFuncQxy target, DiagForm form, std::vector<RatFuncQxy> entries);

  Ambient ambient() const { return ambient_; }
  const RatFuncQxy& target() const { return target_; }
  const DiagForm& form() const { return form_; }
  const std::vector<RatFuncQxy>& entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }

  /// Monic lcm in Q[x,y] of the entry denominators.
  BiPolyQ denominator() const { return bivariate_common_denominator(entries_); }

 private:
  SosRep(Ambient ambient, RatFuncQxy target, DiagForm form, std::vector<RatFuncQxy> entries);

  Ambient ambient_;
  RatFuncQxy target_;
  DiagForm form_;
  std::vector<RatFuncQxy> entries_;
};

struct VerifyResult {
  bool ok;
  RatFuncQxy residual;  // target - sum a_i entries_i^2
};

VerifyResult verify_rep(const SosRep& rep);

/// Reasons attached to a lower bound on the length.
enum class LowerReason {
  Trivial,          // 0 for zero, 1 for any nonzero element
  NotASquare,       // the exact square test failed, so at least 2
  QClassification,  // constants: the length over Q is known exactly
  Nonnegativity,    // negative at a rational point: not a sum of squares
  UserSupplied,
};

std::string_view to_string(LowerReason r);
LowerReason parse_lower_reason(std::string_view s);

struct UpperBound {
  std::size_t n;
  SosRep witness;
};

struct LowerBound {
  std::size_t n;
  LowerReason reason;
};

struct LengthCertificate {
  Ambient ambient;
  RatFuncQxy element;
  std::optional<UpperBound> upper;
  std::optional<LowerBound> lower;
  // Set when the element is certifiably not a sum of squares; lower then
  // carries the reason and upper is empty.
  bool not_sos = false;
  bool exact = false;
};

}  // namespace sosq
