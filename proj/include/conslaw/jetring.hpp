/** @file jetring.hpp
 *  The differential-polynomial ring on the infinite prolongation: variables
 *  z, zb, u, u_j, ub_j, named parameters, and the abstract tower
 *  F(-1) = integral of f, F(0) = f, F(n) = n-th u-derivative of f.
 *  Sparse exact polynomials with Gaussian-rational coefficients, a canonical
 *  graded term order, conjugation, weighted degree, partials with the tower
 *  chain rule, model reduction (f_uu rewrite rules), parsing and rendering.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conslaw/gauss.hpp"

namespace conslaw {

// ---------------------------------------------------------------- variables

enum class VarTag : std::uint8_t { Param, FTower, U, Z, Zbar, Uj, UjBar };

struct VarId {
  VarTag tag{VarTag::U};
  // Param: registry index; FTower: n >= -1; Uj/UjBar: jet index n >= 0.
  std::int32_t n{0};

  static VarId z() { return {VarTag::Z, 0}; }
  static VarId zbar() { return {VarTag::Zbar, 0}; }
  static VarId base_u() { return {VarTag::U, 0}; }
  static VarId uj(int j);
  static VarId ujbar(int j);
  static VarId ftower(int n);
  static VarId param(const std::string& name);

  bool operator==(const VarId& o) const { return tag == o.tag && n == o.n; }
  bool operator!=(const VarId& o) const { return !(*this == o); }
};

/// Canonical variable order: Param (lexical by name) < FTower(-1) < FTower(0)
/// < ... < U < Z < Zbar < Uj(0) < UjBar(0) < Uj(1) < UjBar(1) < ...
bool var_less(const VarId& a, const VarId& b);

/// Interned parameter names (append-only, thread-safe).
const std::string& param_name(int index);
int param_index(const std::string& name);

/// wd(z) = -1, wd(zb) = +1, wd(u_j) = j+1, wd(ub_j) = -(j+1), others 0.
int var_weight(const VarId& v);

VarId var_conjugate(const VarId& v);

/// Short ascii token used by text rendering and the expression grammar.
std::string var_token(const VarId& v);

// ---------------------------------------------------------------- monomials

struct Monomial {
  // Sorted by var_less, exponents > 0.
  std::vector<std::pair<VarId, int>> factors;

  bool is_one() const { return factors.empty(); }
  int exponent(const VarId& v) const;
  int total_degree() const;
  int weight() const;
  Monomial times(const Monomial& o) const;
  Monomial conj() const;
  /// nullopt when not divisible.
  std::optional<Monomial> divide(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return factors == o.factors; }
};

/// Canonical display order: ascending total degree; ties broken at the first
/// differing variable (ascending var order) with the larger exponent first.
/// Its reverse is a multiplicative monomial order used for leading terms.
bool monomial_display_less(const Monomial& a, const Monomial& b);

struct MonomialDisplayLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return monomial_display_less(a, b);
  }
};

// ---------------------------------------------------------------- DiffPoly

class DiffPoly {
 public:
  using TermMap = std::map<Monomial, GaussScalar, MonomialDisplayLess>;

  DiffPoly() = default;
  explicit DiffPoly(GaussScalar c);
  static DiffPoly var(const VarId& v, int exp = 1);
  static DiffPoly constant(long v) { return DiffPoly(GaussScalar(v)); }
  static DiffPoly term(Monomial m, GaussScalar c);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const GaussScalar& c);

  DiffPoly operator-() const;
  DiffPoly operator+(const DiffPoly& o) const;
  DiffPoly operator-(const DiffPoly& o) const;
  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly operator*(const GaussScalar& c) const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffPoly& o) const { return !(*this == o); }

  /// Leading term under the multiplicative order (display-last).
  const std::pair<const Monomial, GaussScalar>& leading() const;

  /// GaussScalar coefficient of an exact monomial (0 if absent).
  GaussScalar coeff(const Monomial& m) const;

  /// True when every variable satisfies the predicate.
  template <typename Pred>
  bool vars_all(Pred pred) const {
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.factors)
        if (!pred(v)) return false;
    return true;
  }

 private:
  TermMap terms_;
};

DiffPoly operator*(const GaussScalar& c, const DiffPoly& p);

// ------------------------------------------------------------ PotentialModel

/// Generic keeps the whole tower abstract; Rule{lam1, lam2} encodes
/// f_uu = lam1 * f_u + lam2 * f with parameter-polynomial coefficients.
class PotentialModel {
 public:
  static PotentialModel generic();
  static PotentialModel rule(DiffPoly lam1, DiffPoly lam2);

  bool is_generic() const { return generic_; }
  const DiffPoly& lam1() const { return lam1_; }
  const DiffPoly& lam2() const { return lam2_; }

 private:
  bool generic_{true};
  DiffPoly lam1_, lam2_;
};

// ---------------------------------------------------------------- operations

DiffPoly conjugate(const DiffPoly& p);

struct WeightedDegree {
  bool zero{false};         // zero polynomial: homogeneous of every degree
  bool homogeneous{false};  // false => "inhomogeneous"
  int degree{0};
};
WeightedDegree weighted_degree(const DiffPoly& p);
bool is_homogeneous_of(const DiffPoly& p, int d);

/// Standard partial derivative; v = U additionally applies the tower chain
/// rule (each F(n) is a function of u: contributes dF(n)->F(n+1)).
DiffPoly partial(const DiffPoly& p, const VarId& v);

/// Eliminates F(n), n >= 2, via the model's rewrite rule (identity for
/// Generic). Exact polynomial substitution; idempotent.
DiffPoly reduce(const DiffPoly& p, const PotentialModel& m);

// ------------------------------------------------------------- parse/render

enum class RenderFormat { Text, Latex, Json };

std::string render(const DiffPoly& p, RenderFormat format);

/// Grammar: variables z zb u u<N> ub<N>; tower f fu Sf F<N>; imaginary unit i;
/// other identifiers are parameters; + - * ^; rational literals p/q; parens.
/// Throws std::invalid_argument with position info on bad input.
DiffPoly parse_expr(const std::string& text);

}  // namespace conslaw
