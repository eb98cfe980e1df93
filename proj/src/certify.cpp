#include "sosq/certify.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "sosq/descent.hpp"
#include "sosq/surface.hpp"
#include "sosq/text.hpp"

namespace sosq {

namespace {

BiPolyQ monomial(const Monomial& m) {
  return BiPolyQ::from_monomials({{m, Rat(1)}});
}

void check_square(const RatMatrix& g) {
  for (const auto& row : g) {
    if (row.size() != g.size()) throw Error(Errc::InvalidArgument, "Gram matrix must be square");
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (g[i][j] != g[j][i]) throw Error(Errc::InvalidArgument, "Gram matrix must be symmetric");
    }
  }
}

// Representation lifted into the ring named by the ambient, when the target
// is a polynomial there; otherwise the representation itself.
SosRep ring_level(const SosRep& rep) {
  const auto poly = as_bipoly(rep.target());
  if (!poly || rep.length() == 0) return rep;
  if (rep.ambient() == Ambient::Qxy) return clear_to_regular(*poly, rep).rep;
  if (rep.ambient() == Ambient::Qx) {
    std::vector<RatFuncQ> v;
    for (const auto& e : rep.entries()) v.push_back(as_x_function(e));
    auto out = cassels_descent<Rat>(rep.form(), poly->as_univariate_x(), v);
    std::vector<RatFuncQxy> entries;
    for (const auto& p : out.entries) entries.push_back(to_field(p));
    return SosRep::checked(rep.ambient(), rep.target(), rep.form(), std::move(entries));
  }
  return rep;
}

bool negative_somewhere(const RatFuncQxy& e) {
  static constexpr std::array<int, 5> grid{0, 1, -1, 2, -2};
  for (int x : grid) {
    for (int y : grid) {
      auto v = eval_point(e, Rat(x), Rat(y));
      if (v && sgn(*v) < 0) return true;
    }
  }
  return false;
}

}  // namespace

LdlResult ldl_decompose(const RatMatrix& gram) {
  check_square(gram);
  const std::size_t n = gram.size();
  RatMatrix a = gram;
  LdlResult out;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  out.lower.assign(n, std::vector<Rat>(n, Rat(0)));
  out.diag.assign(n, Rat(0));

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][i] > a[p][p]) p = i;
    }
    if (p != k) {
      std::swap(a[k], a[p]);
      for (auto& row : a) std::swap(row[k], row[p]);
      std::swap(out.perm[k], out.perm[p]);
      std::swap(out.lower[k], out.lower[p]);
    }
    const Rat pivot = a[k][k];
    if (sgn(pivot) < 0) throw Error(Errc::NotPSD, "negative pivot " + format(pivot));
    if (sgn(pivot) == 0) {
      // the largest remaining diagonal entry is zero: the rest must vanish
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          if (sgn(a[i][j]) != 0) throw Error(Errc::NotPSD, "zero pivot with a nonzero remainder");
        }
      }
      for (std::size_t i = k; i < n; ++i) out.lower[i][i] = 1;
      break;
    }
    out.diag[k] = pivot;
    out.lower[k][k] = 1;
    for (std::size_t i = k + 1; i < n; ++i) out.lower[i][k] = a[i][k] / pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= out.lower[i][k] * a[k][j];
    }
  }
  return out;
}

BiPolyQ gram_form_value(const std::vector<Monomial>& monomials, const RatMatrix& gram) {
  if (gram.size() != monomials.size()) throw Error(Errc::RankMismatch, "Gram size differs from monomial count");
  std::map<Monomial, Rat> acc;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (gram[i].size() != monomials.size()) throw Error(Errc::InvalidArgument, "Gram matrix must be square");
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      Monomial m{monomials[i].first + monomials[j].first, monomials[i].second + monomials[j].second};
      acc[m] += gram[i][j];
    }
  }
  return BiPolyQ::from_monomials(acc);
}

SosRep gram_to_sos(const GramInput& input) {
  check_square(input.gram);
  if (!(gram_form_value(input.monomials, input.gram) == input.target)) {
    throw Error(Errc::TargetMismatch, "m^T G m differs from the target");
  }
  const LdlResult ldl = ldl_decompose(input.gram);
  const std::size_t n = input.monomials.size();
  // squares are listed in the original order of their pivot monomials
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ldl.perm[a] < ldl.perm[b]; });
  std::vector<RatFuncQxy> entries;
  for (std::size_t k : order) {
    if (sgn(ldl.diag[k]) == 0) continue;
    BiPolyQ q;
    for (std::size_t i = k; i < n; ++i) {
      if (sgn(ldl.lower[i][k]) != 0) q = q + monomial(input.monomials[ldl.perm[i]]).scaled(ldl.lower[i][k]);
    }
    for (const Rat& c : q_sos_witness(ldl.diag[k])) entries.push_back(to_field(q.scaled(c)));
  }
  return SosRep::checked(input.ambient, to_field(input.target), std::move(entries));
}

bool hyperelliptic_square_test(const RatFuncQ& f, const PolyQ& k) {
  if (k.is_constant()) throw Error(Errc::InvalidArgument, "k must be nonconstant");
  // (a + b sqrt(k))^2 = a^2 + b^2 k + 2ab sqrt(k) lies in Q(x) only if ab = 0
  return square_test(f) || square_test(f * RatFuncQ(k));
}

bool fourth_power_linear_obstruction(const Rat& m) {
  // x^4 + m x^2 + 1 = sum (a_i x + b_i)^4 forces sum a_i^4 = sum b_i^4 = 1 and
  // m = 6 sum a_i^2 b_i^2, which Cauchy-Schwarz confines to [0, 6].
  return sgn(m) >= 0 && m <= 6;
}

bool verify_fourth_power_rep(const PolyQ& f, std::span<const PolyQ> entries) {
  PolyQ acc;
  for (const auto& e : entries) {
    PolyQ sq = e * e;
    acc += sq * sq;
  }
  return acc == f;
}

LengthCertificate length_certificate(Ambient ambient, const RatFuncQxy& element, std::span<const SosRep> known_reps,
                                     const CertifyOptions& options) {
  if (!belongs_to(ambient, element)) throw Error(Errc::InvalidArgument, "element outside the ambient");
  for (const auto& rep : known_reps) {
    if (!(rep.target() == element)) throw Error(Errc::IdentityViolated, "representation targets another element");
    auto v = verify_rep(rep);
    if (!v.ok) throw Error(Errc::IdentityViolated, "representation does not verify, residual " + format(v.residual));
  }

  LengthCertificate cert{ambient, element, std::nullopt, std::nullopt, false, false};

  auto offer_upper = [&](const SosRep& rep) {
    if (!cert.upper || rep.length() < cert.upper->n) cert.upper = UpperBound{rep.length(), rep};
  };

  if (element.is_zero()) {
    cert.upper = UpperBound{0, SosRep::checked(ambient, element, {})};
    cert.lower = LowerBound{0, LowerReason::Trivial};
  } else if (is_rational_constant(element)) {
    const Rat c = as_rational_constant(element);
    const QLength len = q_length(c);
    if (!len.is_sos()) {
      cert.not_sos = true;
      cert.lower = LowerBound{0, LowerReason::QClassification};
      return cert;
    }
    std::vector<RatFuncQxy> entries;
    for (const Rat& w : q_sos_witness(c)) entries.push_back(to_field(w));
    offer_upper(SosRep::checked(ambient, element, std::move(entries)));
    cert.lower = LowerBound{*len.value, LowerReason::QClassification};
  } else if (negative_somewhere(element)) {
    cert.not_sos = true;
    cert.lower = LowerBound{0, LowerReason::Nonnegativity};
    return cert;
  } else if (auto root = sqrt_exact(element)) {
    offer_upper(SosRep::checked(ambient, element, {*root}));
    cert.lower = LowerBound{1, LowerReason::Trivial};
  } else {
    cert.lower = LowerBound{2, LowerReason::NotASquare};
  }

  for (const auto& rep : known_reps) offer_upper(ring_level(rep));

  if (options.user_lower && options.user_lower->n > cert.lower->n) {
    if (cert.upper && options.user_lower->n > cert.upper->n) {
      throw Error(Errc::InvalidArgument, "supplied lower bound exceeds a verified upper bound");
    }
    cert.lower = LowerBound{options.user_lower->n, LowerReason::UserSupplied};
  }
  cert.exact = cert.upper && cert.lower && cert.upper->n == cert.lower->n;
  return cert;
}

}  // namespace sosq
