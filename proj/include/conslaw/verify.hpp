/** @file verify.hpp
 *  One-shot verification suite aggregating the invariants of every module:
 *  golden generators, dimension tables, closure of the assembled laws, the
 *  recursion identities, potential classification, operator properties,
 *  symmetry residuals, and the numeric convergence checks.
 */
#pragma once

#include <string>
#include <vector>

namespace conslaw {

struct CheckResult {
  std::string name;
  bool pass{false};
  std::string detail;
  double seconds{0.0};
};

/// Runs the eight acceptance checks; `max_degree` bounds the solver degree
/// (default 7 covers everything; lower values skip the heavier cases).
/// `include_numeric` toggles the tolerance-based ODE section.
std::vector<CheckResult> acceptance_checks(int max_degree = 7, bool include_numeric = true);

/// True when every check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace conslaw
