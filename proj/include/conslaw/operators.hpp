/** @file operators.hpp
 *  The total-derivative frame on the infinite jet space: e_{-1}, its
 *  conjugate, the T^i family, and the linearized operator E.
 */
#pragma once

#include "conslaw/jetring.hpp"

#include <vector>

namespace conslaw {

/// Exact binomial coefficient C(n, k); zero outside 0 <= k <= n.
Rational binomial(int n, int k);

/// Memoized T^i table for one potential model.  table[0] = f and
/// T^{i+1} = sum_{j=0}^{i} C(i,j) u_{i-j} dT^j/du, each entry reduced
/// under the model.  Append-only; guarded for concurrent use.
class TCache {
 public:
  explicit TCache(PotentialModel model) : model_(std::move(model)) {}

  const PotentialModel& model() const { return model_; }

  /// T^i (i >= 0), computed on demand by the binomial recursion.
  const DiffPoly& get(int i);

 private:
  PotentialModel model_;
  std::vector<DiffPoly> table_;
};

/// Shared per-model T^i lookup (referentially transparent).
const DiffPoly& T_of(int i, const PotentialModel& m);

/// e_{-1} = d/dz + u_0 d/du + sum u_{i+1} d/du_i − sum conj(T^i) d/dubar_i,
/// with the tower chain rule through u; the result is reduced under m.
DiffPoly e_minus1(const DiffPoly& p, const PotentialModel& m);

/// Conjugate frame vector: conjugate ∘ e_minus1 ∘ conjugate.
DiffPoly e_minus1_bar(const DiffPoly& p, const PotentialModel& m);

/// m-fold application of e_minus1 (m >= 0).
DiffPoly e_minus1_pow(const DiffPoly& p, int m, const PotentialModel& model);

/// m-fold application of e_minus1_bar (m >= 0).
DiffPoly e_minus1_bar_pow(const DiffPoly& p, int m, const PotentialModel& model);

/// Linearized operator E(p) = ebar(e(p)) + f_u p, reduced under m.
DiffPoly E_op(const DiffPoly& p, const PotentialModel& m);

}  // namespace conslaw
