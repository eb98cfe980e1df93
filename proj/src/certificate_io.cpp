#include "sosq/certificate_io.hpp"

#include "sosq/text.hpp"

namespace sosq {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string require_string(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(Errc::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

RatFuncQxy parse_in(const std::string& text, Ambient ambient) {
  RatFuncQxy e = parse_element(text);
  if (!belongs_to(ambient, e)) {
    throw Error(Errc::ParseError, "'" + text + "' lies outside the ambient " + std::string(to_string(ambient)));
  }
  return e;
}

Monomial parse_monomial(const std::string& text, Ambient ambient) {
  auto p = as_bipoly(parse_in(text, ambient));
  if (!p) throw Error(Errc::ParseError, "'" + text + "' is not a monomial");
  auto terms = p->monomials();
  if (terms.size() != 1 || terms.begin()->second != 1) {
    throw Error(Errc::ParseError, "'" + text + "' is not a monomial");
  }
  return terms.begin()->first;
}

Json fraction_json(const RatFuncQxy& e) {
  BiFraction f = to_bivariate_fraction(e);
  return Json{{"num", format(f.num)}, {"den", format(f.den)}};
}

}  // namespace

RatFuncQxy element_from_json(const Json& j, Ambient ambient) {
  if (j.is_string()) return parse_in(j.get<std::string>(), ambient);
  if (j.is_object()) {
    RatFuncQxy num = parse_in(require_string(require(j, "num"), "num"), ambient);
    RatFuncQxy den = j.contains("den") ? parse_in(require_string(j.at("den"), "den"), ambient) : RatFuncQxy(1);
    if (den.is_zero()) throw Error(Errc::ParseError, "zero denominator");
    return num / den;
  }
  throw Error(Errc::ParseError, "element must be a string or a {num, den} object");
}

Json element_to_json(const RatFuncQxy& e) {
  if (auto p = as_bipoly(e)) return format(*p);
  return fraction_json(e);
}

CertificateDoc parse_certificate(const Json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "certificate must be a JSON object");
  CertificateDoc doc;
  doc.ambient = parse_ambient(require_string(require(j, "ambient"), "ambient"));
  doc.target = element_from_json(require(j, "target"), doc.ambient);

  if (j.contains("form")) {
    const Json& f = j.at("form");
    if (!f.is_array()) throw Error(Errc::ParseError, "form must be a list");
    std::vector<Rat> coeffs;
    for (const auto& c : f) coeffs.push_back(parse_rat(require_string(c, "form coefficient")));
    // an empty form accompanies the empty representation of zero
    if (!coeffs.empty()) {
      try {
        doc.form = DiagForm(std::move(coeffs));
      } catch (const Error& e) {
        throw Error(Errc::ParseError, e.what());
      }
    }
  }
  if (j.contains("entries")) {
    const Json& es = j.at("entries");
    if (!es.is_array()) throw Error(Errc::ParseError, "entries must be a list");
    std::vector<RatFuncQxy> entries;
    for (const auto& e : es) {
      if (!e.is_object()) throw Error(Errc::ParseError, "each entry must be a {num, den} object");
      entries.push_back(element_from_json(e, doc.ambient));
    }
    doc.entries = std::move(entries);
  }
  if (j.contains("gram") || j.contains("monomials")) {
    GramInput g;
    g.ambient = doc.ambient;
    auto target = as_bipoly(doc.target);
    if (!target) throw Error(Errc::ParseError, "Gram input needs a polynomial target");
    g.target = *target;
    const Json& ms = require(j, "monomials");
    const Json& rows = require(j, "gram");
    if (!ms.is_array() || !rows.is_array()) throw Error(Errc::ParseError, "monomials and gram must be lists");
    for (const auto& m : ms) g.monomials.push_back(parse_monomial(require_string(m, "monomial"), doc.ambient));
    for (const auto& row : rows) {
      if (!row.is_array()) throw Error(Errc::ParseError, "gram rows must be lists");
      std::vector<Rat> r;
      for (const auto& c : row) r.push_back(parse_rat(require_string(c, "gram entry")));
      g.gram.push_back(std::move(r));
    }
    if (g.gram.size() != g.monomials.size()) throw Error(Errc::ParseError, "gram size differs from monomial count");
    doc.gram = std::move(g);
  }
  if (j.contains("lower_bound")) {
    const Json& lb = j.at("lower_bound");
    const Json& n = require(lb, "n");
    if (!n.is_number_unsigned()) throw Error(Errc::ParseError, "lower_bound.n must be a nonnegative integer");
    doc.lower_bound = LowerBound{n.get<std::size_t>(), LowerReason::UserSupplied};
  }
  return doc;
}

CertificateDoc parse_certificate_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return parse_certificate(j);
}

SosRep representation_of(const CertificateDoc& doc) {
  if (!doc.entries) throw Error(Errc::ParseError, "certificate has no entries");
  DiagForm form = doc.form ? *doc.form : DiagForm::sum_of_squares(std::max<std::size_t>(doc.entries->size(), 1));
  if (doc.form && doc.form->rank() != doc.entries->size()) {
    throw Error(Errc::ParseError, "form rank differs from the number of entries");
  }
  return SosRep::unchecked(doc.ambient, doc.target, std::move(form), *doc.entries);
}

Json to_json(const SosRep& rep) {
  Json j;
  j["ambient"] = std::string(to_string(rep.ambient()));
  j["target"] = element_to_json(rep.target());
  Json form = Json::array();
  if (rep.length() > 0) {
    for (const Rat& a : rep.form().coefficients()) form.push_back(format(a));
  }
  j["form"] = form;
  Json entries = Json::array();
  for (const auto& e : rep.entries()) entries.push_back(fraction_json(e));
  j["entries"] = entries;
  return j;
}

Json to_json(const RegularRep& reg) {
  Json j = to_json(reg.rep);
  j["h"] = format(reg.h);
  j["g"] = format(reg.g);
  return j;
}

Json to_json(const LengthCertificate& cert) {
  Json j;
  j["ambient"] = std::string(to_string(cert.ambient));
  j["element"] = element_to_json(cert.element);
  j["sos"] = !cert.not_sos;
  if (cert.upper) {
    j["upper"] = Json{{"n", cert.upper->n}, {"witness", to_json(cert.upper->witness)}};
  } else {
    j["upper"] = nullptr;
  }
  if (cert.lower) {
    j["lower"] = Json{{"n", cert.lower->n}, {"reason", std::string(to_string(cert.lower->reason))}};
  } else {
    j["lower"] = nullptr;
  }
  j["exact"] = cert.exact;
  return j;
}

}  // namespace sosq
