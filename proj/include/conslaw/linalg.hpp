/** @file linalg.hpp
 *  Exact linear algebra over the polynomial ring: fraction-free
 *  (Bareiss-style) Gauss-Jordan elimination and kernel extraction, exact
 *  polynomial division, and the small factoring toolbox used by the
 *  potential classification (content removal, square-free part, rational
 *  roots of the graded univariate reduction).
 */
#pragma once

#include "conslaw/jetring.hpp"

#include <optional>
#include <vector>

namespace conslaw {

/// Exact quotient a / b in the polynomial ring (nullopt when b does not
/// divide a).  Division uses the multiplicative term order (display-last
/// leading terms).
std::optional<DiffPoly> divide_exact(const DiffPoly& a, const DiffPoly& b);

using PolyMatrix = std::vector<std::vector<DiffPoly>>;

struct EchelonResult {
  PolyMatrix mat;               // fraction-free reduced form
  std::vector<int> pivot_rows;  // pivot_rows[k] pairs with pivot_cols[k]
  std::vector<int> pivot_cols;
  DiffPoly pivot;               // final pivot value (det of the pivot block)
  int rank{0};
};

/// Fraction-free Gauss-Jordan elimination (one-step Bareiss): every update
/// is (piv*a_ij − a_ic*a_kj)/prev with exact division.  On exit all pivot
/// entries equal `pivot` and pivot columns vanish elsewhere.
EchelonResult ffgj(PolyMatrix m);

/// Exact right kernel of m (rows x cols): one vector per free column, each
/// with polynomial entries (free coordinate = final pivot).  Deterministic.
/// `cols` must be supplied because m may have no rows (no constraints).
std::vector<std::vector<DiffPoly>> kernel(const PolyMatrix& m, int cols);

/// Normalizes a kernel vector: clears rational content; if the first
/// nonzero coordinate divides every coordinate exactly it is scaled to 1
/// (so rational-coefficient kernels always get leading coordinate 1).
std::vector<DiffPoly> normalize_kernel_vector(std::vector<DiffPoly> v);

/// Rational content (gcd of all coefficient magnitudes; GaussScalar norm
/// uses |re| and |im| numerators/denominators).  Zero polynomial -> 1.
Rational rational_content(const DiffPoly& p);

/// p with rational content removed and sign fixed so that the first
/// displayed term has positive real part (or positive imaginary part when
/// the real part is zero).
DiffPoly normalize_condition(const DiffPoly& p);

// ----------------------------------------------------- univariate toolbox
// Dense univariate polynomials over the rationals, used by classify after
// the graded reduction l2 = t*l1^2.

using RatPoly = std::vector<Rational>;  // coeffs[k] multiplies t^k

RatPoly ratpoly_derivative(const RatPoly& p);
RatPoly ratpoly_gcd(RatPoly a, RatPoly b);
RatPoly ratpoly_divide_exact(const RatPoly& a, const RatPoly& b);

/// Square-free part p / gcd(p, p').
RatPoly ratpoly_squarefree(const RatPoly& p);

/// All rational roots (with the remaining non-linear factor, if any).
struct RatRoots {
  std::vector<Rational> roots;
  RatPoly remainder;  // what is left after dividing out (t - root) factors
};
RatRoots ratpoly_rational_roots(const RatPoly& p);

}  // namespace conslaw
