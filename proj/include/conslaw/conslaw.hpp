/** @file conslaw.hpp
 *  Kernels of the linearized operator on weighted-homogeneous jet
 *  polynomials (the spaces V_d), normal-form differentiated conservation
 *  laws (rho, B-coefficients, Phi), undifferentiated laws (varphi), the
 *  classical weighted-degree-0 laws, and the classification of admissible
 *  potentials.
 */
#pragma once

#include "conslaw/forms.hpp"
#include "conslaw/jetring.hpp"
#include "conslaw/linalg.hpp"
#include "conslaw/operators.hpp"

#include <map>
#include <utility>
#include <vector>

namespace conslaw {

struct VdBasis {
  int degree{0};
  std::vector<Monomial> monomials;  // u_{d-1} first, then by partition order
};

/// All weight-d monomials in the u_j variables (partitions of d into parts
/// j+1), leading monomial u_{d-1} first.
VdBasis vd_basis(int d);

struct VdSolution {
  int degree{0};
  PotentialModel model;
  VdBasis basis;
  std::vector<DiffPoly> kernel;  // normalized generators
  int dim{0};
};

/// Exact kernel of the linearized operator on the weight-d ansatz.
/// d = 0 returns span{q}; negative d is the conjugate of solve_vd(-d).
/// `shuffle_seed` permutes the basis enumeration (result must not change
/// after normalization; used by property tests).
VdSolution solve_vd(int d, const PotentialModel& m, unsigned shuffle_seed = 0);

/// Exact kernel of ebar on the weight-d ansatz (expected empty).
std::vector<DiffPoly> kernel_of_ebar(int d, const PotentialModel& m);

/// B^{ij} = sqrt(-1) * sum_{m=0}^{k-j-i+1} (-1)^{m-i+1} C(m+i-1, i-1)
///          (e_{-1})^m (dP/du_{m+j+i-1}),    1 <= i < j <= k,  k = d-1.
/// Requires P weighted-homogeneous of degree d, z-free and mixing-free.
std::map<std::pair<int, int>, DiffPoly> b_coeffs(const DiffPoly& P, int d,
                                                 const PotentialModel& m);

struct NormalFormLaw {
  DiffPoly P;
  int degree{0};
  int level{0};  // k = d - 1
  DiffPoly A_real;
  DiffForm rho;  // -(1/2) J dP
  std::map<std::pair<int, int>, DiffPoly> B;
  DiffForm Phi;       // complex piece: eta0^rho + P psi + sum B eta_i^eta_j
  DiffForm Phi_real;  // Phi + conjugate(Phi)
  DiffForm closure_residual;  // d(Phi_real); zero for kernel elements
};

/// Assembles the normal-form law for a kernel element P of weight d >= 1.
/// Throws std::invalid_argument when P is not annihilated by E_op.
NormalFormLaw build_phi(const DiffPoly& P, int d, const PotentialModel& m);

struct UndiffLaw {
  DiffPoly P;
  int degree{0};
  DiffForm varphi;        // real 1-form with d(varphi) = Phi_real
  DiffForm w;             // (1/d) v -| Phi (complex; d(w) = i Phi)
  DiffForm varphi_tilde;  // (q e(P)) zeta + (ebar(q) P) zetabar
  DiffForm dvarphi_residual;     // d(varphi) - Phi_real (must be zero)
  DiffForm tilde_obstruction;    // mod_ideal(d varphi_tilde) (must be zero)
  DiffForm correction;           // ideal 1-form used by the classical law
  bool exact{false};
};

/// Undifferentiated law for P in V_d, d != 0, via contraction with the
/// circle-symmetry vector.  Throws for d = 0 (use classical_phi0).
UndiffLaw build_varphi(const DiffPoly& P, int d, const PotentialModel& m);

/// Classical two-parameter family: P = a u_0 + i b z u_0, A = P + conj P,
/// Phi = eta0 ^ (-1/2 J dA) + A psi; closure verified.
NormalFormLaw classical_laws(const GaussScalar& a, const Rational& b,
                             const PotentialModel& m);

/// The weight-0 undifferentiated law phi_0 = G eta0 + E zeta + conj(E)
/// zetabar with G = -(z u_0 + zbar ubar_0), E = -(1/2) z u_0^2 + zbar Sf.
/// Satisfies d(phi_0) = Phi(a=0,b=1) + d((1/2) G eta0): equal to the
/// classical law up to d of an ideal 1-form (stored in `correction`).
UndiffLaw classical_phi0(const PotentialModel& m);

struct ClassifyCondition {
  DiffPoly condition;  // normalized polynomial in l1, l2 (condition = 0)
  DiffPoly witness;    // kernel generator on that branch (may be zero)
};

struct ClassifyReport {
  int degree{0};
  std::vector<ClassifyCondition> conditions;
};

/// Rank-drop analysis of the solver matrix over Q[l1, l2] for
/// f_uu = l1 f_u + l2 f: deflates rational constant pivots, takes the gcd
/// of the residual maximal minors, and factors it (graded reduction
/// l2 = t l1^2, square-free part, rational roots).  d odd, 3 <= d <= 7.
ClassifyReport classify(int d);

}  // namespace conslaw
