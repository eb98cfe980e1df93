#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sosq::cli {

/// Runs the command-line tool; args excludes the program name.
/// Exit codes: 0 affirmed, 1 refuted, 2 bad input, 3 internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sosq::cli
