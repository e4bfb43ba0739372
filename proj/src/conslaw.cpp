/** @file conslaw.cpp */
#include "conslaw/conslaw.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace conslaw {

// ----------------------------------------------------------------- vd_basis

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

Monomial monomial_from_partition(const std::vector<int>& parts) {
  std::map<int, int> exps;  // jet index -> exponent
  for (int p : parts) exps[p - 1] += 1;
  Monomial m;
  for (const auto& [j, e] : exps) m.factors.emplace_back(VarId::uj(j), e);
  return m;
}

}  // namespace

VdBasis vd_basis(int d) {
  if (d < 1) throw std::invalid_argument("vd_basis requires d >= 1");
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions_rec(d, d, cur, parts);  // reverse-lex: [d] first
  VdBasis b;
  b.degree = d;
  for (const auto& p : parts) b.monomials.push_back(monomial_from_partition(p));
  return b;
}

// ------------------------------------------------------------ system builder

namespace {

/// Splits a monomial into its parameter part and the remaining core.
std::pair<Monomial, Monomial> split_param(const Monomial& m) {
  Monomial params, core;
  for (const auto& [v, e] : m.factors) {
    if (v.tag == VarTag::Param) params.factors.emplace_back(v, e);
    else core.factors.emplace_back(v, e);
  }
  return {params, core};
}

struct LinearSystem {
  PolyMatrix M;                   // rows x cols, entries in the parameter ring
  std::vector<Monomial> row_key;  // grouping core monomials (for debugging)
};

/// Rows of the exact linear system op(sum c_t mono_t) = 0, grouped by core
/// (non-parameter) monomial.
template <typename Op>
LinearSystem build_system(const std::vector<Monomial>& basis, Op&& op) {
  std::vector<DiffPoly> images;
  images.reserve(basis.size());
  for (const auto& mono : basis) images.push_back(op(DiffPoly::term(mono, GaussScalar(1))));
  std::map<Monomial, int, MonomialDisplayLess> row_of;
  for (const auto& img : images)
    for (const auto& [m, c] : img.terms()) {
      auto [params, core] = split_param(m);
      row_of.emplace(core, 0);
    }
  LinearSystem sys;
  int r = 0;
  for (auto& [core, idx] : row_of) {
    idx = r++;
    sys.row_key.push_back(core);
  }
  sys.M.assign(static_cast<std::size_t>(r),
               std::vector<DiffPoly>(basis.size(), DiffPoly()));
  for (std::size_t t = 0; t < images.size(); ++t)
    for (const auto& [m, c] : images[t].terms()) {
      auto [params, core] = split_param(m);
      sys.M[static_cast<std::size_t>(row_of[core])][t].add_term(params, c);
    }
  return sys;
}

DiffPoly q_poly() {
  return DiffPoly::var(VarId::z()) * DiffPoly::var(VarId::uj(0)) -
         DiffPoly::var(VarId::zbar()) * DiffPoly::var(VarId::ujbar(0));
}

std::string poly_sort_key(const DiffPoly& p) { return render(p, RenderFormat::Text); }

}  // namespace

// ----------------------------------------------------------------- solve_vd

VdSolution solve_vd(int d, const PotentialModel& m, unsigned shuffle_seed) {
  VdSolution sol;
  sol.degree = d;
  sol.model = m;
  if (d == 0) {
    sol.basis.degree = 0;
    sol.kernel.push_back(q_poly());
    sol.dim = 1;
    return sol;
  }
  if (d < 0) {
    VdSolution pos = solve_vd(-d, m, shuffle_seed);
    sol.basis.degree = d;
    for (const auto& mono : pos.basis.monomials) sol.basis.monomials.push_back(mono.conj());
    for (const auto& p : pos.kernel) sol.kernel.push_back(conjugate(p));
    sol.dim = pos.dim;
    return sol;
  }
  sol.basis = vd_basis(d);
  const std::size_t n = sol.basis.monomials.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed != 0) {
    std::mt19937 rng(shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<Monomial> cols;
  cols.reserve(n);
  for (std::size_t t : order) cols.push_back(sol.basis.monomials[t]);
  LinearSystem sys = build_system(cols, [&](const DiffPoly& p) { return E_op(p, m); });
  auto vecs = kernel(sys.M, static_cast<int>(n));
  for (auto& v : vecs) {
    // back to canonical basis positions, then renormalize canonically
    std::vector<DiffPoly> canon(n);
    for (std::size_t t = 0; t < n; ++t) canon[order[t]] = v[t];
    canon = normalize_kernel_vector(std::move(canon));
    DiffPoly P;
    for (std::size_t t = 0; t < n; ++t)
      P += canon[t] * DiffPoly::term(sol.basis.monomials[t], GaussScalar(1));
    if (!E_op(P, m).is_zero()) throw std::logic_error("solver produced a non-kernel vector");
    sol.kernel.push_back(std::move(P));
  }
  std::sort(sol.kernel.begin(), sol.kernel.end(),
            [](const DiffPoly& a, const DiffPoly& b) { return poly_sort_key(a) < poly_sort_key(b); });
  sol.dim = static_cast<int>(sol.kernel.size());
  return sol;
}

std::vector<DiffPoly> kernel_of_ebar(int d, const PotentialModel& m) {
  if (d < 1) throw std::invalid_argument("kernel_of_ebar requires d >= 1");
  VdBasis basis = vd_basis(d);
  LinearSystem sys =
      build_system(basis.monomials, [&](const DiffPoly& p) { return e_minus1_bar(p, m); });
  auto vecs = kernel(sys.M, static_cast<int>(basis.monomials.size()));
  std::vector<DiffPoly> out;
  for (const auto& v : vecs) {
    DiffPoly P;
    for (std::size_t t = 0; t < v.size(); ++t)
      P += v[t] * DiffPoly::term(basis.monomials[t], GaussScalar(1));
    out.push_back(std::move(P));
  }
  return out;
}

// ----------------------------------------------------------------- b_coeffs

std::map<std::pair<int, int>, DiffPoly> b_coeffs(const DiffPoly& P, int d,
                                                 const PotentialModel& m) {
  if (!is_homogeneous_of(P, d))
    throw std::invalid_argument("generating function is not weighted-homogeneous of the given degree");
  bool clean = P.vars_all([](const VarId& v) {
    return v.tag == VarTag::Uj || v.tag == VarTag::FTower || v.tag == VarTag::Param;
  });
  if (!clean)
    throw std::invalid_argument("generating function must be z-free and mixing-free");
  const int k = d - 1;
  const GaussScalar I = GaussScalar::sqrt_minus_one();
  std::map<std::pair<int, int>, DiffPoly> B;
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      DiffPoly acc;
      const int mmax = k - j - i + 1;
      for (int mm = 0; mm <= mmax; ++mm) {
        DiffPoly dP = partial(P, VarId::uj(mm + j + i - 1));
        if (dP.is_zero()) continue;
        GaussScalar c(binomial(mm + i - 1, i - 1));
        if (((mm - i + 1) % 2 + 2) % 2 != 0) c = -c;
        acc += c * e_minus1_pow(dP, mm, m);
      }
      acc = I * reduce(acc, m);
      if (!acc.is_zero()) B[{i, j}] = acc;
    }
  }
  return B;
}

// ---------------------------------------------------------------- build_phi

NormalFormLaw build_phi(const DiffPoly& P0, int d, const PotentialModel& m) {
  if (d < 1) throw std::invalid_argument("build_phi requires d >= 1");
  DiffPoly P = reduce(P0, m);
  if (!E_op(P, m).is_zero())
    throw std::invalid_argument("generating function is not in the kernel of the linearized operator");
  NormalFormLaw law;
  law.P = P;
  law.degree = d;
  law.level = d - 1;
  law.A_real = P + conjugate(P);
  law.rho = GaussScalar::ratio(-1, 2) * J_apply(d_function(P, m));
  law.B = b_coeffs(P, d, m);
  DiffForm phi = wedge(DiffForm::basis(letter::Eta0), law.rho);
  phi += P * psi();
  for (const auto& [ij, b] : law.B) {
    DiffForm w;
    w.add_word({letter::eta(ij.first), letter::eta(ij.second)}, b);
    phi += w;
  }
  law.Phi = phi;
  law.Phi_real = phi + conjugate(phi);
  law.closure_residual = d_form(law.Phi_real, m);
  return law;
}

// -------------------------------------------------------------- build_varphi

UndiffLaw build_varphi(const DiffPoly& P, int d, const PotentialModel& m) {
  if (d == 0) throw std::invalid_argument("weight 0 laws are classical: use classical_phi0");
  if (d < 0)
    throw std::invalid_argument("negative weights follow by conjugation of the positive case");
  NormalFormLaw law = build_phi(P, d, m);
  FrameVector v = s1_vector(m, d + 2);
  UndiffLaw u;
  u.P = law.P;
  u.degree = d;
  u.w = GaussScalar{Rational(1, d), Rational(0)} * interior(v, law.Phi);
  DiffForm half = GaussScalar{Rational(0), Rational(-1)} * u.w;  // d(half) = Phi
  u.varphi = half + conjugate(half);
  DiffPoly q = q_poly();
  u.varphi_tilde = DiffForm();
  u.varphi_tilde.add_word({letter::Zeta}, q * e_minus1(law.P, m));
  u.varphi_tilde.add_word({letter::ZetaBar}, e_minus1_bar(q, m) * law.P);
  u.dvarphi_residual = d_form(u.varphi, m) - law.Phi_real;
  u.tilde_obstruction = mod_ideal(d_form(u.varphi_tilde, m));
  u.exact = u.dvarphi_residual.is_zero() && u.tilde_obstruction.is_zero();
  return u;
}

// ------------------------------------------------------------ classical laws

NormalFormLaw classical_laws(const GaussScalar& a, const Rational& b,
                             const PotentialModel& m) {
  const GaussScalar I = GaussScalar::sqrt_minus_one();
  DiffPoly u0 = DiffPoly::var(VarId::uj(0));
  DiffPoly P = DiffPoly(a) * u0 + DiffPoly(I * GaussScalar(b)) * DiffPoly::var(VarId::z()) * u0;
  NormalFormLaw law;
  law.P = P;
  law.degree = 0;
  law.level = 0;
  law.A_real = P + conjugate(P);
  law.rho = GaussScalar::ratio(-1, 2) * J_apply(d_function(law.A_real, m));
  law.Phi = wedge(DiffForm::basis(letter::Eta0), law.rho) + law.A_real * psi();
  law.Phi_real = law.Phi;  // already real (A_real is self-conjugate)
  law.closure_residual = d_form(law.Phi_real, m);
  return law;
}

UndiffLaw classical_phi0(const PotentialModel& m) {
  DiffPoly z = DiffPoly::var(VarId::z());
  DiffPoly zb = DiffPoly::var(VarId::zbar());
  DiffPoly u0 = DiffPoly::var(VarId::uj(0));
  DiffPoly ub0 = DiffPoly::var(VarId::ujbar(0));
  DiffPoly G = -(z * u0 + zb * ub0);
  DiffPoly E = GaussScalar::ratio(-1, 2) * (z * u0 * u0) + zb * DiffPoly::var(VarId::ftower(-1));
  DiffForm phi0;
  phi0.add_word({letter::Eta0}, G);
  phi0.add_word({letter::Zeta}, E);
  phi0.add_word({letter::ZetaBar}, conjugate(E));
  NormalFormLaw cl = classical_laws(GaussScalar(0), Rational(1), m);
  UndiffLaw u;
  u.P = cl.P;
  u.degree = 0;
  u.varphi = phi0;
  u.correction = DiffForm();
  u.correction.add_word({letter::Eta0}, GaussScalar::ratio(1, 2) * G);
  u.dvarphi_residual = d_form(phi0, m) - cl.Phi_real - d_form(u.correction, m);
  u.exact = u.dvarphi_residual.is_zero();
  return u;
}

// ------------------------------------------------------------------ classify

namespace {

/// True when the polynomial is a rational (real) constant.
bool is_rational_constant(const DiffPoly& p) {
  if (p.is_zero() || p.size() != 1) return false;
  const auto& [m, c] = *p.terms().begin();
  return m.is_one() && c.is_real();
}

struct GradedEntry {
  int m1{0}, m2{0};  // extracted powers of l1, l2
  RatPoly h;         // reduced univariate part in t (l2 = t l1^2)
};

GradedEntry grade_entry(const DiffPoly& p, const VarId& l1, const VarId& l2) {
  GradedEntry g;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    int a = m.exponent(l1), b = m.exponent(l2);
    if (static_cast<int>(m.factors.size()) !=
        (a > 0 ? 1 : 0) + (b > 0 ? 1 : 0))
      throw std::logic_error("classification entry involves unexpected variables");
    if (!c.is_real()) throw std::logic_error("classification entry is not real");
    if (first) {
      g.m1 = a;
      g.m2 = b;
      first = false;
    } else {
      g.m1 = std::min(g.m1, a);
      g.m2 = std::min(g.m2, b);
    }
  }
  int W = -1;
  for (const auto& [m, c] : p.terms()) {
    int a = m.exponent(l1) - g.m1, b = m.exponent(l2) - g.m2;
    if (W < 0) W = a + 2 * b;
    else if (W != a + 2 * b)
      throw std::logic_error("classification entry is not graded-homogeneous");
    if (static_cast<std::size_t>(b) >= g.h.size()) g.h.resize(static_cast<std::size_t>(b) + 1, Rational(0));
    g.h[static_cast<std::size_t>(b)] += c.re;
  }
  return g;
}

DiffPoly homogenize_condition(const RatPoly& h, const VarId& l1, const VarId& l2) {
  // h(t) of degree D -> sum h[k] l2^k l1^{2(D-k)}
  const int D = static_cast<int>(h.size()) - 1;
  DiffPoly out;
  for (int k = 0; k <= D; ++k) {
    if (h[static_cast<std::size_t>(k)] == 0) continue;
    Monomial m;
    if (2 * (D - k) > 0) m.factors.emplace_back(l1, 2 * (D - k));
    if (k > 0) m.factors.emplace_back(l2, k);
    std::sort(m.factors.begin(), m.factors.end(),
              [](const auto& x, const auto& y) { return var_less(x.first, y.first); });
    out.add_term(m, GaussScalar(h[static_cast<std::size_t>(k)]));
  }
  return normalize_condition(out);
}

DiffPoly witness_for(int d, const PotentialModel& branch) {
  VdSolution sol = solve_vd(d, branch);
  if (sol.dim < 1) throw std::logic_error("classification branch produced an empty kernel");
  return sol.kernel.front();
}

}  // namespace

ClassifyReport classify(int d) {
  if (d < 3 || d > 7 || d % 2 == 0)
    throw std::invalid_argument("classify supports odd degrees 3, 5, 7");
  const VarId l1 = VarId::param("l1");
  const VarId l2 = VarId::param("l2");
  PotentialModel sym = PotentialModel::rule(DiffPoly::var(l1), DiffPoly::var(l2));
  VdBasis basis = vd_basis(d);
  LinearSystem sys =
      build_system(basis.monomials, [&](const DiffPoly& p) { return E_op(p, sym); });
  PolyMatrix M = std::move(sys.M);
  // Constant-pivot deflation: invertible row operations with rational pivots
  // followed by removal of the pivot row and column preserve the gcd of the
  // maximal minors up to a unit (every maximal minor uses all columns).
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < M.size() && !changed; ++r) {
      for (std::size_t c = 0; c < M[r].size() && !changed; ++c) {
        if (!is_rational_constant(M[r][c])) continue;
        GaussScalar piv = M[r][c].terms().begin()->second;
        for (std::size_t i = 0; i < M.size(); ++i) {
          if (i == r || M[i][c].is_zero()) continue;
          DiffPoly mult = M[i][c] * (GaussScalar(1) / piv);
          for (std::size_t j = 0; j < M[i].size(); ++j)
            M[i][j] -= mult * M[r][j];
        }
        // remove pivot row r and column c
        M.erase(M.begin() + static_cast<std::ptrdiff_t>(r));
        for (auto& row : M) row.erase(row.begin() + static_cast<std::ptrdiff_t>(c));
        changed = true;
      }
    }
  }
  ClassifyReport rep;
  rep.degree = d;
  std::size_t cols = M.empty() ? 0 : M[0].size();
  if (cols == 0) return rep;  // full rank everywhere: no conditions
  if (cols != 1) throw std::logic_error("unexpected residual shape in classification");
  std::vector<DiffPoly> entries;
  for (const auto& row : M)
    if (!row[0].is_zero()) entries.push_back(normalize_condition(row[0]));
  if (entries.empty()) throw std::logic_error("degenerate residual in classification");
  int m1 = -1, m2 = -1;
  RatPoly h;
  for (const auto& e : entries) {
    GradedEntry g = grade_entry(e, l1, l2);
    m1 = m1 < 0 ? g.m1 : std::min(m1, g.m1);
    m2 = m2 < 0 ? g.m2 : std::min(m2, g.m2);
    h = h.empty() ? g.h : ratpoly_gcd(h, g.h);
  }
  DiffPoly l2sym = DiffPoly::var(l2);
  DiffPoly l1sym = DiffPoly::var(l1);
  if (m1 > 0) {
    ClassifyCondition c;
    c.condition = l1sym;
    c.witness = witness_for(d, PotentialModel::rule(DiffPoly(), l2sym));
    rep.conditions.push_back(std::move(c));
  }
  if (m2 > 0) {
    ClassifyCondition c;
    c.condition = l2sym;
    c.witness = witness_for(d, PotentialModel::rule(l1sym, DiffPoly()));
    rep.conditions.push_back(std::move(c));
  }
  if (h.size() > 1) {
    RatRoots roots = ratpoly_rational_roots(ratpoly_squarefree(h));
    std::sort(roots.roots.begin(), roots.roots.end());
    for (const Rational& t0 : roots.roots) {
      ClassifyCondition c;
      c.condition = normalize_condition(l2sym - GaussScalar(t0) * l1sym * l1sym);
      c.witness = witness_for(
          d, PotentialModel::rule(l1sym, GaussScalar(t0) * l1sym * l1sym));
      rep.conditions.push_back(std::move(c));
    }
    if (roots.remainder.size() > 1) {
      ClassifyCondition c;
      c.condition = homogenize_condition(roots.remainder, l1, l2);
      rep.conditions.push_back(std::move(c));  // no rational witness branch
    }
  }
  return rep;
}

}  // namespace conslaw
