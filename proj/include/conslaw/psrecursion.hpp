/** @file psrecursion.hpp
 *  The explicit (P^i, phi^i, theta^{l,m}) recursion generating the full
 *  chain of odd-weight generating functions when f_uu = beta f.
 */
#pragma once

#include "conslaw/jetring.hpp"

#include <map>
#include <utility>
#include <vector>

namespace conslaw {

struct PSChain {
  DiffPoly beta;  // parameter polynomial (often Param("b") or a rational)
  PotentialModel model;
  std::vector<DiffPoly> P;    // P[i-1] = P_i, wd(P_i) = 2i - 1, P_1 = u_0
  std::vector<DiffPoly> phi;  // phi[i-1] = phi_i, wd = 2i
  std::map<std::pair<int, int>, DiffPoly> theta;  // wd(theta^{l,m}) = 2(l+m)

  const DiffPoly& P_at(int i) const { return P.at(static_cast<std::size_t>(i - 1)); }
  const DiffPoly& phi_at(int i) const { return phi.at(static_cast<std::size_t>(i - 1)); }
};

/// Computes P_1..P_n (and phi_1..phi_{n-1}) under f_uu = beta f:
///   P_1 = u_0,     P_{i+1} = e(e(P_i)) - (beta/2) u_0 phi_i,
///   phi_i = (P_l)^2 + 2 sum_{j<l} theta^{j,i-j}              (i = 2l-1)
///   phi_i = P_{l+1} P_l + theta^{l,l} + 2 sum_{j<l} theta^{j,i-j}  (i = 2l)
///   theta^{l,m} = P_l P_{m+1} - e(P_l) e(P_m) + (beta/4) phi_l phi_m.
/// beta must be a parameter/rational polynomial; beta = 0 degenerates the
/// chain to iterated e^2 of u_0 (allowed but the kernel property fails).
PSChain ps_chain(int n, const DiffPoly& beta);

struct PSVerify {
  DiffPoly e_phi_residual;     // e(phi_i) - 2 u_0 e(P_i)
  DiffPoly ebar_phi_residual;  // ebar(phi_i) + 2 f P_i
  DiffPoly kernel_residual;    // ebar(e(P_i)) + f_u P_i
  bool ok{false};
};

/// Exact verification of the chain identities for entry i (phi residuals
/// need i < n since phi_n is not materialized for the last entry).
PSVerify verify_ps(int i, const PSChain& chain);

}  // namespace conslaw
