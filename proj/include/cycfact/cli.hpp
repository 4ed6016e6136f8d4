#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cycfact {

/// Full command-line front end: parses args (without the program name),
/// dispatches to the engines, writes the report to `out` and diagnostics to
/// `err`.  Returns the process exit code: 0 confirmed/value/exploratory,
/// 1 refuted, 2 usage or bound error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cycfact
