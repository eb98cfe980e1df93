#pragma once

// Length certificates: upper bounds from verified representations (including
// exact Gram-matrix extraction), lower bounds from square tests and the
// classification of lengths over Q, plus two obstructions showing where
// polynomial descent stops working.

#include <optional>
#include <span>
#include <vector>

#include "sosq/forms.hpp"

namespace sosq {

using RatMatrix = std::vector<std::vector<Rat>>;

/// target = m^T G m for the monomial vector m.
struct GramInput {
  Ambient ambient = Ambient::Qxy;
  BiPolyQ target;
  std::vector<Monomial> monomials;
  RatMatrix gram;
};

/// P G P^T = L D L^T with L unit lower triangular. perm[i] is the row of G
/// placed at position i.
struct LdlResult {
  std::vector<std::size_t> perm;
  RatMatrix lower;
  std::vector<Rat> diag;
};

/// Exact LDL^T with symmetric pivoting on the largest remaining diagonal entry
/// (lowest index on ties). Throws NotPSD on a negative pivot or when a zero
/// pivot leaves a nonzero remainder.
LdlResult ldl_decompose(const RatMatrix& gram);

BiPolyQ gram_form_value(const std::vector<Monomial>& monomials, const RatMatrix& gram);

/// Sum-of-squares representation from a PSD Gram matrix; each pivot d is
/// spread over q_length(d) rational squares.
SosRep gram_to_sos(const GramInput& input);

/// Whether f is a square in Q(x)(sqrt(k)) for nonconstant k.
bool hyperelliptic_square_test(const RatFuncQ& f, const PolyQ& k);

/// Necessary condition 0 <= m <= 6 for x^4 + m x^2 + 1 to be a sum of fourth
/// powers of polynomials. False certifies that it is not.
bool fourth_power_linear_obstruction(const Rat& m);

bool verify_fourth_power_rep(const PolyQ& f, std::span<const PolyQ> entries);

struct CertifyOptions {
  std::optional<LowerBound> user_lower;
};

LengthCertificate length_certificate(Ambient ambient, const RatFuncQxy& element, std::span<const SosRep> known_reps,
                                     const CertifyOptions& options = {});

}  // namespace sosq
