#pragma once

// Exact integers and rationals, the length of a rational as a sum of squares,
// and the integer reflection descent for sums of at most three squares.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sosq {

using Int = mpz_class;
using Rat = mpq_class;  // always canonical: reduced, positive denominator

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

Rat make_rat(const Int& num, const Int& den);

// Nearest integer; exact halves are rounded toward zero.
Int round_half_toward_zero(const Rat& t);

std::optional<Rat> sqrt_exact(const Rat& q);

/// Length of a rational as a sum of squares in Q. An empty value means the
/// input is negative and therefore not a sum of squares at all.
struct QLength {
  std::optional<unsigned> value;

  bool is_sos() const { return value.has_value(); }
  friend bool operator==(const QLength&, const QLength&) = default;
};

QLength q_length(const Rat& q);

/// Length of a nonnegative integer. Inputs above 64 bits raise InputTooLarge
/// because the two-square criterion needs a factorization.
unsigned int_length(const Int& n);

/// Rationals c_1..c_L with sum c_j^2 = q and L = q_length(q).
std::vector<Rat> q_sos_witness(const Rat& q);

/// Integers w_1..w_L with sum w_j^2 = n and L = int_length(n).
std::vector<Int> int_sos_witness(const Int& n);

// Factorization of a 64-bit integer by trial division and Pollard rho.
// Factors are returned in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);
bool is_prime_u64(std::uint64_t n);

/// Integer reflection descent (Davenport-Cassels). Given rationals v with
/// sum v_i^2 = n, returns integers w with sum w_i^2 = n. At most three
/// coordinates are accepted; the rounding bound degenerates at four.
std::vector<Int> int_three_square_descent(const Int& n, std::span<const Rat> v,
                                          std::vector<Int>* denominator_trace = nullptr);

}  // namespace sosq
