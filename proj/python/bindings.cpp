#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sosq/api.hpp"
#include "sosq/certify.hpp"
#include "sosq/exact.hpp"
#include "sosq/roots.hpp"
#include "sosq/text.hpp"

namespace py = pybind11;

namespace {

sosq::Json load(const std::string& text) {
  try {
    return sosq::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw sosq::Error(sosq::Errc::ParseError, e.what());
  }
}

std::string document(const sosq::api::Outcome& o) { return o.document ? o.document->dump() : std::string("null"); }

std::optional<sosq::api::Base> base_of(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return sosq::api::parse_base(*s);
}

}  // namespace

PYBIND11_MODULE(_sosq, m) {
  m.doc() = "Exact sums-of-squares length certificates over Q";

  py::register_exception<sosq::Error>(m, "SosqError", PyExc_ValueError);

  m.def(
      "q_length",
      [](const std::string& q) -> std::optional<unsigned> { return sosq::q_length(sosq::parse_rat(q)).value; },
      py::arg("q"), "Length of a rational as a sum of squares in Q; None if negative");
  m.def(
      "q_sos_witness",
      [](const std::string& q) {
        std::vector<std::string> out;
        for (const auto& c : sosq::q_sos_witness(sosq::parse_rat(q))) out.push_back(sosq::format(c));
        return out;
      },
      py::arg("q"));
  m.def(
      "rational_roots",
      [](const std::string& g) {
        std::vector<std::string> out;
        for (const auto& r : sosq::rational_roots(sosq::parse_poly_x(g))) out.push_back(sosq::format(r));
        return out;
      },
      py::arg("g"));
  m.def(
      "normalize", [](const std::string& e) { return sosq::format(sosq::parse_element(e)); }, py::arg("expr"),
      "Canonical text of an element of Q(x,y)");
  m.def(
      "square_test",
      [](const std::string& f, const std::optional<std::string>& k) {
        return sosq::api::square_test(f, k).exit_code == 0;
      },
      py::arg("f"), py::arg("k") = py::none());
  m.def(
      "fourth_power_obstruction",
      [](const std::string& m_text) { return sosq::fourth_power_linear_obstruction(sosq::parse_rat(m_text)); },
      py::arg("m"), "False certifies x^4 + m x^2 + 1 is not a sum of fourth powers of polynomials");

  m.def(
      "verify", [](const std::string& cert) { return sosq::api::verify(load(cert)).exit_code == 0; },
      py::arg("certificate"));
  m.def(
      "descend",
      [](const std::string& cert, const std::optional<std::string>& base) {
        return document(sosq::api::descend(load(cert), base_of(base)));
      },
      py::arg("certificate"), py::arg("base") = py::none());
  m.def(
      "clear", [](const std::string& cert) { return document(sosq::api::clear(load(cert))); },
      py::arg("certificate"));
  m.def(
      "scale", [](const std::string& cert) { return document(sosq::api::scale(load(cert))); },
      py::arg("certificate"));
  m.def(
      "gram", [](const std::string& cert) { return document(sosq::api::gram(load(cert))); },
      py::arg("certificate"));
  m.def(
      "certify", [](const std::string& cert) { return document(sosq::api::certify(load(cert))); },
      py::arg("certificate"));
}
