#pragma once

// Document-level operations shared by the command-line tool and the Python
// module. Each call takes parsed input and returns an Outcome; errors are
// reported as sosq::Error exceptions.

#include <optional>
#include <string>
#include <vector>

#include "sosq/certificate_io.hpp"

namespace sosq::api {

enum class Base { Qx, Qx_y };
Base parse_base(const std::string& s);

struct TraceOptions {
  bool trace = false;  // every intermediate identity check
  bool full = false;   // full entries at every step
};

struct Outcome {
  int exit_code = 0;  // 0 affirmed, 1 refuted
  std::string text;   // result line(s) for standard output
  std::optional<Json> document;
  std::vector<std::string> trace;
};

Outcome verify(const Json& doc, const TraceOptions& opts = {});
Outcome descend(const Json& doc, std::optional<Base> base, const TraceOptions& opts = {});
Outcome clear(const Json& doc, const TraceOptions& opts = {});
Outcome scale(const Json& doc, const TraceOptions& opts = {});
Outcome gram(const Json& doc, const TraceOptions& opts = {});
Outcome certify(const Json& doc, const TraceOptions& opts = {});
Outcome qlength(const std::string& q);
Outcome square_test(const std::string& f, const std::optional<std::string>& k);
Outcome fourth_power_check(const std::string& m, const std::vector<std::string>& entries = {});

/// 2 for bad input, 3 for internal invariant failures, 1 for NotPSD.
int exit_code_for(const Error& e);

}  // namespace sosq::api
