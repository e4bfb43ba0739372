/** @file linalg.cpp */
#include "conslaw/linalg.hpp"

#include <algorithm>

namespace conslaw {

std::optional<DiffPoly> divide_exact(const DiffPoly& a, const DiffPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  DiffPoly q;
  DiffPoly r = a;
  const auto& [bm, bc] = b.leading();
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    auto mq = rm.divide(bm);
    if (!mq) return std::nullopt;
    DiffPoly t = DiffPoly::term(*mq, rc / bc);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

DiffPoly must_divide(const DiffPoly& a, const DiffPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("fraction-free elimination: inexact division");
  return *q;
}

}  // namespace

EchelonResult ffgj(PolyMatrix m) {
  EchelonResult res;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  DiffPoly prev = DiffPoly::constant(1);
  DiffPoly piv = DiffPoly::constant(1);
  std::vector<bool> used(static_cast<std::size_t>(rows), false);
  for (int c = 0; c < cols; ++c) {
    // deterministic pivot choice: fewest terms, then lowest row index
    int pr = -1;
    std::size_t best = 0;
    for (int r = 0; r < rows; ++r) {
      if (used[static_cast<std::size_t>(r)] || m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero())
        continue;
      std::size_t sz = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].size();
      if (pr < 0 || sz < best) {
        pr = r;
        best = sz;
      }
    }
    if (pr < 0) continue;
    used[static_cast<std::size_t>(pr)] = true;
    piv = m[static_cast<std::size_t>(pr)][static_cast<std::size_t>(c)];
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      auto& row = m[static_cast<std::size_t>(r)];
      const auto& prow = m[static_cast<std::size_t>(pr)];
      const DiffPoly mult = row[static_cast<std::size_t>(c)];
      for (int j = 0; j < cols; ++j) {
        DiffPoly num = piv * row[static_cast<std::size_t>(j)] - mult * prow[static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(j)] = num.is_zero() ? DiffPoly() : must_divide(num, prev);
      }
    }
    res.pivot_rows.push_back(pr);
    res.pivot_cols.push_back(c);
    prev = piv;
  }
  res.mat = std::move(m);
  res.pivot = piv;
  res.rank = static_cast<int>(res.pivot_cols.size());
  return res;
}

std::vector<std::vector<DiffPoly>> kernel(const PolyMatrix& m, int cols) {
  std::vector<std::vector<DiffPoly>> out;
  if (cols == 0) return out;
  EchelonResult e = ffgj(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<DiffPoly> x(static_cast<std::size_t>(cols));
    x[static_cast<std::size_t>(f)] = e.pivot;
    for (int k = 0; k < e.rank; ++k)
      x[static_cast<std::size_t>(e.pivot_cols[static_cast<std::size_t>(k)])] =
          -e.mat[static_cast<std::size_t>(e.pivot_rows[static_cast<std::size_t>(k)])]
                [static_cast<std::size_t>(f)];
    out.push_back(normalize_kernel_vector(std::move(x)));
  }
  return out;
}

namespace {

using Int = boost::multiprecision::cpp_int;

Rational rational_gcd(const Rational& a, const Rational& b) {
  // gcd of rationals: gcd of numerators / lcm of denominators
  Int na = numerator(a), da = denominator(a);
  Int nb = numerator(b), db = denominator(b);
  Int g = boost::multiprecision::gcd(na * db, nb * da);
  return Rational(g, da * db);
}

}  // namespace

Rational rational_content(const DiffPoly& p) {
  Rational c(0);
  for (const auto& [m, s] : p.terms()) {
    if (s.re != 0) c = (c == 0) ? Rational(boost::multiprecision::abs(numerator(s.re)), denominator(s.re))
                                : rational_gcd(c, s.re);
    if (s.im != 0) c = (c == 0) ? Rational(boost::multiprecision::abs(numerator(s.im)), denominator(s.im))
                                : rational_gcd(c, s.im);
  }
  if (c == 0) return Rational(1);
  if (c < 0) c = -c;
  return c;
}

DiffPoly normalize_condition(const DiffPoly& p) {
  if (p.is_zero()) return p;
  GaussScalar scale{Rational(1) / rational_content(p)};
  const GaussScalar& first = p.terms().begin()->second;
  if (first.re < 0 || (first.re == 0 && first.im < 0)) scale = -scale;
  return p * scale;
}

std::vector<DiffPoly> normalize_kernel_vector(std::vector<DiffPoly> v) {
  std::size_t j0 = v.size();
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j].is_zero()) {
      j0 = j;
      break;
    }
  }
  if (j0 == v.size()) return v;
  // Preferred: scale so the first nonzero coordinate becomes exactly 1.
  std::vector<DiffPoly> scaled(v.size());
  bool ok = true;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    auto q = divide_exact(v[j], v[j0]);
    if (!q) {
      ok = false;
      break;
    }
    scaled[j] = *q;
  }
  if (ok) return scaled;
  // Fallback: clear overall rational content and fix the sign.
  Rational c(0);
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    Rational pc = rational_content(p);
    c = (c == 0) ? pc : rational_gcd(c, pc);
  }
  if (c == 0) c = 1;
  GaussScalar scale{Rational(1) / c};
  const GaussScalar& first = v[j0].terms().begin()->second;
  if (first.re < 0 || (first.re == 0 && first.im < 0)) scale = -scale;
  for (auto& p : v) p = p * scale;
  return v;
}

// ----------------------------------------------------- univariate toolbox

namespace {

void ratpoly_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Division with remainder; returns quotient, leaves remainder in a.
RatPoly ratpoly_divmod(RatPoly& a, const RatPoly& b) {
  RatPoly q;
  if (b.empty()) throw std::invalid_argument("univariate division by zero");
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    ratpoly_trim(a);
  }
  return q;
}

}  // namespace

RatPoly ratpoly_derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  ratpoly_trim(d);
  return d;
}

RatPoly ratpoly_gcd(RatPoly a, RatPoly b) {
  ratpoly_trim(a);
  ratpoly_trim(b);
  while (!b.empty()) {
    ratpoly_divmod(a, b);  // a := remainder
    std::swap(a, b);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;  // monic for canonicity
  }
  return a;
}

RatPoly ratpoly_divide_exact(const RatPoly& a, const RatPoly& b) {
  RatPoly r = a;
  RatPoly q = ratpoly_divmod(r, b);
  if (!r.empty()) throw std::logic_error("univariate division was not exact");
  return q;
}

RatPoly ratpoly_squarefree(const RatPoly& p) {
  RatPoly t = p;
  ratpoly_trim(t);
  if (t.size() <= 1) return t;
  RatPoly g = ratpoly_gcd(t, ratpoly_derivative(t));
  if (g.size() <= 1) return t;
  return ratpoly_divide_exact(t, g);
}

namespace {

std::vector<Int> divisors_of(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> out;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational ratpoly_eval(const RatPoly& p, const Rational& t) {
  Rational acc(0);
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

}  // namespace

RatRoots ratpoly_rational_roots(const RatPoly& p) {
  RatRoots res;
  RatPoly cur = p;
  ratpoly_trim(cur);
  if (cur.empty()) {
    res.remainder = cur;
    return res;
  }
  // factor out t^k
  std::size_t k0 = 0;
  while (k0 < cur.size() && cur[k0] == 0) ++k0;
  for (std::size_t k = 0; k < k0; ++k) res.roots.push_back(Rational(0));
  cur.erase(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k0));
  // integer-normalize: coefficients -> integers
  Int den_lcm = 1;
  for (const auto& c : cur) den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
  std::vector<Int> ic;
  for (const auto& c : cur) ic.push_back(numerator(c) * (den_lcm / denominator(c)));
  bool again = true;
  while (again && cur.size() > 1) {
    again = false;
    Int a0 = ic.front(), al = ic.back();
    for (const Int& pn : divisors_of(a0)) {
      for (const Int& qd : divisors_of(al)) {
        for (int sgn : {1, -1}) {
          Rational cand(sgn * pn, qd);
          if (ratpoly_eval(cur, cand) == 0) {
            res.roots.push_back(cand);
            RatPoly lin{-cand, Rational(1)};
            cur = ratpoly_divide_exact(cur, lin);
            ic.clear();
            Int dl = 1;
            for (const auto& c : cur) dl = boost::multiprecision::lcm(dl, denominator(c));
            for (const auto& c : cur) ic.push_back(numerator(c) * (dl / denominator(c)));
            again = true;
          }
          if (again) break;
        }
        if (again) break;
      }
      if (again) break;
    }
  }
  res.remainder = cur;
  return res;
}

}  // namespace conslaw
