/** @file symmetry.hpp
 *  Generalized symmetries from generating functions (evolutionary
 *  prolongation in the frame), Lie-derivative residual checks, and the
 *  Noether correspondence with conservation laws.
 */
#pragma once

#include "conslaw/conslaw.hpp"
#include "conslaw/forms.hpp"
#include "conslaw/jetring.hpp"

#include <optional>
#include <string>

namespace conslaw {

struct GenSymmetry {
  DiffPoly g;
  int depth{0};
  FrameVector v;  // E0 = g, Ei(i) = e^i g, EiBar(i) = ebar^i g; no zeta parts
};

/// Evolutionary prolongation of g to the requested eta-depth (no kernel
/// check; used for residual probes on non-solutions).
GenSymmetry evolutionary_vector(const DiffPoly& g, const PotentialModel& m, int depth);

/// Checked constructor: throws std::invalid_argument unless E(g) = 0.
GenSymmetry symmetry_from_generating(const DiffPoly& g, const PotentialModel& m, int depth);

/// Residual of the symmetry condition at obstruction index i: the Lie
/// derivative (Cartan formula) of eta_{i+1} along v, reduced mod the
/// contact ideal.  Returns a 1-form with only zeta/zetabar coefficients;
/// both vanish iff the condition holds at this index.  For non-solutions
/// the i = 0 zetabar-coefficient equals E(g).  Requires depth >= i + 2.
DiffForm lie_check(const GenSymmetry& v, int i, const PotentialModel& m);

enum class NoetherKind { NormalForm, Classical, Gap };

struct NoetherResult {
  NoetherKind kind{NoetherKind::Gap};
  std::optional<NormalFormLaw> law;      // NormalForm kind
  std::optional<UndiffLaw> classical;    // Classical kind (weight-0 route)
  std::string message;
};

/// Noether correspondence: for g in V_d (z-free, mixing-free,
/// weighted-homogeneous of degree d > 0) returns the normal-form law built
/// from g; weight-0 generating functions with explicit z are routed to the
/// classical law; solutions of the linearized equation that violate the
/// no-mixing conditions are reported as the symmetry/conservation-law gap.
/// Throws std::invalid_argument when E(g) != 0.
NoetherResult noether_pair(const DiffPoly& g, int d, const PotentialModel& m);

}  // namespace conslaw
