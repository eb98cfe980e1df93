#pragma once

// Certificate documents. A certificate is a JSON object
//
//   {
//     "ambient": "Q" | "Q[x]" | "Q[x,y]",
//     "target":  "x^2*y^2 + x^2 + y^2 + 1"  or  {"num": "...", "den": "..."},
//     "form":    ["1", "1"],                            (optional, default all ones)
//     "entries": [{"num": "x*y - 1", "den": "1"}, ...]
//   }
//
// with every number written as an exact string. Gram input adds
// "monomials": ["1", "x", ...] and "gram": [["1", "0"], ...]; a user lower
// bound may be given as "lower_bound": {"n": 3}.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sosq/certify.hpp"
#include "sosq/forms.hpp"
#include "sosq/surface.hpp"

namespace sosq {

using Json = nlohmann::ordered_json;

struct CertificateDoc {
  Ambient ambient = Ambient::Qxy;
  RatFuncQxy target;
  std::optional<DiagForm> form;
  std::optional<std::vector<RatFuncQxy>> entries;
  std::optional<GramInput> gram;
  std::optional<LowerBound> lower_bound;
};

CertificateDoc parse_certificate(const Json& doc);
CertificateDoc parse_certificate_text(const std::string& text);

/// The representation in the document, without checking the identity.
/// Throws ParseError if the document has no entries.
SosRep representation_of(const CertificateDoc& doc);

Json element_to_json(const RatFuncQxy& e);
RatFuncQxy element_from_json(const Json& j, Ambient ambient);

Json to_json(const SosRep& rep);
Json to_json(const RegularRep& reg);
Json to_json(const LengthCertificate& cert);

}  // namespace sosq
