#include "sosq/api.hpp"

#include "sosq/text.hpp"

namespace sosq::api {

namespace {

SosRep valid_rep(const CertificateDoc& doc) {
  SosRep rep = representation_of(doc);
  auto v = verify_rep(rep);
  if (!v.ok) throw Error(Errc::IdentityViolated, "certificate does not verify, residual " + format(v.residual));
  return rep;
}

std::string entries_text(const std::vector<RatFuncQxy>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format(v[i]);
  return out + ")";
}

template <class F>
std::vector<RatFuncQxy> lift(const std::vector<RatFunc<F>>& v) {
  std::vector<RatFuncQxy> out;
  for (const auto& c : v) {
    if constexpr (std::is_same_v<F, Rat>) {
      out.push_back(RatFuncQxy(c));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

template <class F>
DescentObserver<F> step_observer(Outcome& out, const TraceOptions& opts, const DiagForm& form,
                                 const RatFunc<F>& target) {
  return [&out, opts, form, target](std::size_t step, const std::vector<RatFunc<F>>& v) {
    std::string line = "step " + std::to_string(step + 1) + ": denominator degree " +
                       std::to_string(denominator_degree(v));
    if (opts.trace) {
      line += (eval_form(form, v) == target) ? ", phi(v) = target: ok" : ", phi(v) = target: FAILED";
    }
    out.trace.push_back(line);
    if (opts.full) out.trace.push_back("  entries " + entries_text(lift(v)));
  };
}

bool is_length_certificate(const Json& j) { return j.is_object() && j.contains("element") && !j.contains("target"); }

// A length certificate is valid when its witness verifies for the element and
// the bounds and flags agree with what can be recomputed from the element.
Outcome verify_length_certificate(const Json& j, const TraceOptions& opts) {
  Ambient ambient;
  RatFuncQxy element;
  std::optional<SosRep> witness;
  std::size_t upper_n = 0, lower_n = 0;
  bool sos = true, exact = false, user_lower = false, has_lower = false;
  try {
    ambient = parse_ambient(j.at("ambient").get<std::string>());
    element = element_from_json(j.at("element"), ambient);
    sos = j.at("sos").get<bool>();
    exact = j.at("exact").get<bool>();
    if (!j.at("upper").is_null()) {
      upper_n = j["upper"].at("n").get<std::size_t>();
      witness = representation_of(parse_certificate(j["upper"].at("witness")));
    }
    if (!j.at("lower").is_null()) {
      has_lower = true;
      lower_n = j["lower"].at("n").get<std::size_t>();
      user_lower = parse_lower_reason(j["lower"].at("reason").get<std::string>()) == LowerReason::UserSupplied;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("length certificate: ") + e.what());
  }

  std::vector<std::string> problems;
  if (witness) {
    const VerifyResult v = verify_rep(*witness);
    if (!v.ok) problems.push_back("witness residual " + format(v.residual));
    if (!(witness->target() == element)) problems.push_back("witness is for another element");
    if (witness->length() != upper_n) problems.push_back("upper bound differs from the witness length");
  }
  const LengthCertificate fresh = length_certificate(ambient, element, {});
  if (sos == fresh.not_sos) problems.push_back("sos flag disagrees with the recomputed one");
  if (has_lower && !user_lower && fresh.lower && lower_n > fresh.lower->n) {
    problems.push_back("lower bound exceeds what its reason certifies");
  }
  if (has_lower && witness && lower_n > upper_n) problems.push_back("lower bound above the upper bound");
  if (exact != (has_lower && witness && lower_n == upper_n)) problems.push_back("exact flag disagrees with the bounds");

  Outcome out;
  if (opts.trace) {
    out.trace.push_back("element " + format(element));
    if (witness) out.trace.push_back("witness of length " + std::to_string(witness->length()));
  }
  out.exit_code = problems.empty() ? 0 : 1;
  out.text = problems.empty() ? "valid" : "invalid: " + problems.front();
  return out;
}

}  // namespace

Base parse_base(const std::string& s) {
  if (s == "Qx") return Base::Qx;
  if (s == "Qx_y") return Base::Qx_y;
  throw Error(Errc::ParseError, "unknown base '" + s + "' (expected Qx or Qx_y)");
}

int exit_code_for(const Error& e) {
  if (is_internal_failure(e.code())) return 3;
  if (e.code() == Errc::NotPSD) return 1;
  return 2;
}

Outcome verify(const Json& j, const TraceOptions& opts) {
  if (is_length_certificate(j)) return verify_length_certificate(j, opts);
  const CertificateDoc doc = parse_certificate(j);
  const SosRep rep = representation_of(doc);
  const VerifyResult v = verify_rep(rep);
  Outcome out;
  if (opts.trace) {
    out.trace.push_back("target " + format(rep.target()));
    for (std::size_t i = 0; i < rep.length(); ++i) {
      out.trace.push_back("  + " + format(rep.form().coefficients()[i]) + " * (" + format(rep.entries()[i]) + ")^2");
    }
    out.trace.push_back("residual " + format(v.residual));
  }
  out.exit_code = v.ok ? 0 : 1;
  out.text = v.ok ? "valid" : "invalid: residual " + format(v.residual);
  return out;
}

Outcome descend(const Json& j, std::optional<Base> base, const TraceOptions& opts) {
  const CertificateDoc doc = parse_certificate(j);
  const SosRep rep = valid_rep(doc);
  const Base b = base.value_or(doc.ambient == Ambient::Qxy ? Base::Qx_y : Base::Qx);
  Outcome out;
  std::vector<RatFuncQxy> entries;
  std::vector<std::size_t> degrees;

  if (b == Base::Qx) {
    if (doc.ambient == Ambient::Qxy) throw Error(Errc::InvalidArgument, "base Qx needs ambient Q or Q[x]");
    const RatFuncQ target = as_x_function(rep.target());
    if (!target.is_polynomial()) throw Error(Errc::NotPolynomial, "target is not a polynomial in x");
    std::vector<RatFuncQ> v;
    for (const auto& e : rep.entries()) v.push_back(as_x_function(e));
    auto res = cassels_descent<Rat>(rep.form(), target.num(), v, step_observer<Rat>(out, opts, rep.form(), target));
    for (const auto& p : res.entries) entries.push_back(to_field(p));
    degrees = res.denominator_degrees;
  } else {
    if (!rep.target().is_polynomial()) throw Error(Errc::NotPolynomial, "target is not a polynomial in y");
    auto res = cassels_descent<RatFuncQ>(rep.form(), rep.target().num(), rep.entries(),
                                         step_observer<RatFuncQ>(out, opts, rep.form(), rep.target()));
    for (const auto& p : res.entries) entries.push_back(RatFuncQxy(p));
    degrees = res.denominator_degrees;
  }
  out.trace.insert(out.trace.begin(), "start: denominator degree " + std::to_string(degrees.front()));

  const SosRep result = SosRep::checked(rep.ambient(), rep.target(), rep.form(), std::move(entries));
  Json d = to_json(result);
  d["denominator_degrees"] = degrees;
  out.document = std::move(d);
  return out;
}

Outcome clear(const Json& j, const TraceOptions& opts) {
  const CertificateDoc doc = parse_certificate(j);
  const SosRep rep = valid_rep(doc);
  auto f = as_bipoly(rep.target());
  if (!f) throw Error(Errc::NotPolynomial, "clear needs a polynomial target in Q[x,y]");
  Outcome out;
  const RegularRep reg = clear_to_regular(*f, rep, step_observer<RatFuncQ>(out, opts, rep.form(), RatFuncQxy(f->in_y())));
  out.trace.insert(out.trace.begin(), "vertical factor h = " + format(reg.h));
  out.trace.push_back("regular denominator g = " + format(reg.g));
  if (opts.trace) {
    out.trace.push_back(std::string("final identity: ") + (verify_rep(reg.rep).ok ? "ok" : "FAILED"));
  }
  Json d = to_json(reg);
  d["denominator_degrees"] = reg.descent_degrees;
  out.document = std::move(d);
  return out;
}

Outcome scale(const Json& j, const TraceOptions& opts) {
  const CertificateDoc doc = parse_certificate(j);
  const SosRep rep = valid_rep(doc);
  const ScaledRep s = scale_to_polynomial(rep);
  Outcome out;
  out.trace.push_back("common denominator g = " + format(s.g));
  if (opts.trace) out.trace.push_back(std::string("scaled identity: ") + (verify_rep(s.rep).ok ? "ok" : "FAILED"));
  Json d = to_json(s.rep);
  d["g"] = format(s.g);
  out.document = std::move(d);
  return out;
}

Outcome gram(const Json& j, const TraceOptions& opts) {
  const CertificateDoc doc = parse_certificate(j);
  if (!doc.gram) throw Error(Errc::ParseError, "certificate has no Gram block");
  const LdlResult ldl = ldl_decompose(doc.gram->gram);
  const SosRep rep = gram_to_sos(*doc.gram);
  Outcome out;
  Json pivots = Json::array();
  for (const Rat& d : ldl.diag) pivots.push_back(format(d));
  if (opts.trace) {
    for (std::size_t k = 0; k < ldl.diag.size(); ++k) {
      out.trace.push_back("pivot " + std::to_string(k) + " (row " + std::to_string(ldl.perm[k]) + "): " +
                          format(ldl.diag[k]));
    }
  }
  Json d = to_json(rep);
  d["pivots"] = pivots;
  out.document = std::move(d);
  return out;
}

Outcome certify(const Json& j, const TraceOptions& opts) {
  const CertificateDoc doc = parse_certificate(j);
  std::vector<SosRep> reps;
  if (doc.entries) reps.push_back(valid_rep(doc));
  if (doc.gram) reps.push_back(gram_to_sos(*doc.gram));
  CertifyOptions options;
  options.user_lower = doc.lower_bound;
  const LengthCertificate cert = length_certificate(doc.ambient, doc.target, reps, options);
  Outcome out;
  if (opts.trace) {
    for (const auto& r : reps) out.trace.push_back("known representation of length " + std::to_string(r.length()));
  }
  out.exit_code = cert.not_sos ? 1 : 0;
  out.document = to_json(cert);
  return out;
}

Outcome qlength(const std::string& text) {
  const QLength len = q_length(parse_rat(text));
  Outcome out;
  if (len.is_sos()) {
    out.text = std::to_string(*len.value);
  } else {
    out.exit_code = 1;
    out.text = "NotSOS";
  }
  return out;
}

Outcome square_test(const std::string& f_text, const std::optional<std::string>& k_text) {
  Outcome out;
  if (k_text) {
    const RatFuncQ f = parse_x_function(f_text);
    const PolyQ k = parse_poly_x(*k_text);
    const bool sq = hyperelliptic_square_test(f, k);
    out.exit_code = sq ? 0 : 1;
    out.text = std::string(sq ? "square" : "not a square") + " in Q(x)(sqrt(" + format(k) + "))";
    return out;
  }
  const RatFuncQxy f = parse_element(f_text);
  if (auto root = sqrt_exact(f)) {
    out.text = "square: (" + format(*root) + ")^2";
  } else {
    out.exit_code = 1;
    out.text = "not a square";
  }
  return out;
}

Outcome fourth_power_check(const std::string& m_text, const std::vector<std::string>& entries) {
  const Rat m = parse_rat(m_text);
  const PolyQ x = PolyQ::indeterminate();
  const PolyQ f = pow(x, 4) + (x * x).scaled(m) + PolyQ(Rat(1));
  Outcome out;
  if (!entries.empty()) {
    std::vector<PolyQ> es;
    for (const auto& e : entries) es.push_back(parse_poly_x(e));
    const bool ok = verify_fourth_power_rep(f, es);
    out.exit_code = ok ? 0 : 1;
    out.text = std::string(ok ? "verified: " : "not verified: ") + format(f) + " = sum of fourth powers";
    return out;
  }
  if (fourth_power_linear_obstruction(m)) {
    out.text = "consistent: m = " + format(m) + " lies in [0, 6]";
  } else {
    out.exit_code = 1;
    out.text = "refuted: " + format(f) + " is not a sum of fourth powers of polynomials (m outside [0, 6])";
  }
  return out;
}

}  // namespace sosq::api
