/** @file cli.hpp
 *  Command-line surface: verb dispatch, deterministic exports, exit codes
 *  (0 success, 1 verification failure, 2 usage error).
 */
#pragma once

#include "conslaw/jetring.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace conslaw {

/// Runs the CLI on `args` (without the program name), writing results to
/// `out` and diagnostics/logs to `err`.  Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Model mini-language: `generic`, `fuu=<expr>*f`, `fuu=<e1>*fu+<e2>*f`
/// with parameter/rational expressions.  Throws std::invalid_argument.
PotentialModel parse_model_text(const std::string& text);

}  // namespace conslaw
