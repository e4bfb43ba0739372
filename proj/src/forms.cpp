/** @file forms.cpp */
#include "conslaw/forms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace conslaw {

namespace letter {

int eta(int i) {
  if (i < 0) throw std::invalid_argument("eta index must be >= 0");
  return i == 0 ? Eta0 : 2 * i + 1;
}

int eta_bar(int i) {
  if (i < 1) throw std::invalid_argument("etabar index must be >= 1");
  return 2 * i + 2;
}

bool is_eta_family(int L) { return L >= 2; }

int eta_index(int L) {
  if (L < 2) return -1;
  if (L == Eta0) return 0;
  return L % 2 ? (L - 1) / 2 : (L - 2) / 2;
}

bool is_barred(int L) {
  if (L == ZetaBar) return true;
  return L > 2 && L % 2 == 0;
}

int weight_of(int L) {
  if (L == Zeta) return -1;
  if (L == ZetaBar) return 1;
  int i = eta_index(L);
  return is_barred(L) ? -i : i;
}

int conj_of(int L) {
  if (L == Zeta) return ZetaBar;
  if (L == ZetaBar) return Zeta;
  if (L == Eta0) return Eta0;
  return is_barred(L) ? eta(eta_index(L)) : eta_bar(eta_index(L));
}

std::string token(int L) {
  if (L == Zeta) return "zeta";
  if (L == ZetaBar) return "zetab";
  int i = eta_index(L);
  return (is_barred(L) ? "etab" : "eta") + std::to_string(i);
}

std::string latex(int L) {
  if (L == Zeta) return "\\zeta";
  if (L == ZetaBar) return "\\bar{\\zeta}";
  int i = eta_index(L);
  return (is_barred(L) ? "\\bar{\\eta}_{" : "\\eta_{") + std::to_string(i) + "}";
}

}  // namespace letter

// ------------------------------------------------------------------ DiffForm

namespace {

/// Sorts a word in place; returns permutation sign, or 0 on repeated letter.
int sort_word(WedgeWord& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;
  return sign;
}

}  // namespace

DiffForm DiffForm::basis(int L) {
  DiffForm f;
  f.add_word({L}, DiffPoly::constant(1));
  return f;
}

DiffForm DiffForm::scalar(DiffPoly F) {
  DiffForm f;
  f.add_word({}, F);
  return f;
}

void DiffForm::add_word(WedgeWord word, const DiffPoly& c) {
  if (c.is_zero()) return;
  int sign = sort_word(word);
  if (sign == 0) return;
  DiffPoly add = sign == 1 ? c : -c;
  auto [it, inserted] = terms_.emplace(std::move(word), add);
  if (!inserted) {
    it->second += add;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffForm DiffForm::operator-() const {
  DiffForm out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
  DiffForm out = *this;
  out += o;
  return out;
}

DiffForm DiffForm::operator-(const DiffForm& o) const {
  DiffForm out = *this;
  out -= o;
  return out;
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  for (const auto& [w, c] : o.terms_) add_word(w, c);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) {
  for (const auto& [w, c] : o.terms_) add_word(w, -c);
  return *this;
}

int DiffForm::degree() const {
  if (terms_.empty()) throw std::logic_error("degree of the zero form");
  std::size_t len = terms_.begin()->first.size();
  for (const auto& [w, c] : terms_)
    if (w.size() != len) throw std::logic_error("mixed-degree form");
  return static_cast<int>(len);
}

DiffPoly DiffForm::coeff(const WedgeWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? DiffPoly() : it->second;
}

DiffForm operator*(const DiffPoly& c, const DiffForm& w) {
  DiffForm out;
  for (const auto& [word, k] : w.terms()) out.add_word(word, c * k);
  return out;
}

DiffForm operator*(const GaussScalar& c, const DiffForm& w) {
  return DiffPoly(c) * w;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  DiffForm out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      WedgeWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_word(std::move(w), ca * cb);
    }
  }
  return out;
}

DiffForm conjugate(const DiffForm& w) {
  DiffForm out;
  for (const auto& [word, c] : w.terms()) {
    WedgeWord cw;
    cw.reserve(word.size());
    for (int L : word) cw.push_back(letter::conj_of(L));
    out.add_word(std::move(cw), conjugate(c));
  }
  return out;
}

WeightedDegree weighted_degree(const DiffForm& w) {
  WeightedDegree r;
  if (w.is_zero()) {
    r.zero = true;
    r.homogeneous = true;
    return r;
  }
  bool first = true;
  for (const auto& [word, c] : w.terms()) {
    int base = 0;
    for (int L : word) base += letter::weight_of(L);
    WeightedDegree wc = weighted_degree(c);
    if (!wc.homogeneous) {
      r.homogeneous = false;
      return r;
    }
    int total = base + wc.degree;
    if (first) {
      r.degree = total;
      r.homogeneous = true;
      first = false;
    } else if (total != r.degree) {
      r.homogeneous = false;
      r.degree = 0;
      return r;
    }
  }
  return r;
}

// ------------------------------------------------------------------ exterior

DiffForm d_function(const DiffPoly& F, const PotentialModel& m) {
  DiffForm out;
  out.add_word({letter::Zeta}, e_minus1(F, m));
  out.add_word({letter::ZetaBar}, e_minus1_bar(F, m));
  out.add_word({letter::Eta0}, reduce(partial(F, VarId::base_u()), m));
  std::set<int> js, jbars;
  for (const auto& [mono, c] : F.terms()) {
    for (const auto& [v, e] : mono.factors) {
      if (v.tag == VarTag::Uj) js.insert(v.n);
      else if (v.tag == VarTag::UjBar) jbars.insert(v.n);
    }
  }
  for (int j : js) out.add_word({letter::eta(j + 1)}, reduce(partial(F, VarId::uj(j)), m));
  for (int j : jbars)
    out.add_word({letter::eta_bar(j + 1)}, reduce(partial(F, VarId::ujbar(j)), m));
  return out;
}

DiffForm tau(int i, const PotentialModel& m) {
  if (i < 0) throw std::invalid_argument("tau index must be >= 0");
  DiffForm out;
  for (int j = 0; j <= i; ++j) {
    DiffPoly tju = reduce(partial(T_of(j, m), VarId::base_u()), m);
    out.add_word({letter::eta(i - j)}, GaussScalar(binomial(i, j)) * tju);
  }
  return out;
}

namespace {

/// d of a single basis letter (degree-2 form) by the structure equations.
DiffForm d_letter(int L, const PotentialModel& m) {
  DiffForm out;
  if (L == letter::Zeta || L == letter::ZetaBar) return out;
  if (L == letter::Eta0) {
    out.add_word({letter::Zeta, letter::eta(1)}, DiffPoly::constant(1));
    out.add_word({letter::ZetaBar, letter::eta_bar(1)}, DiffPoly::constant(1));
    return out;
  }
  int i = letter::eta_index(L);
  if (!letter::is_barred(L)) {
    // d eta_i = -eta_{i+1} ^ zeta + tau^{i-1} ^ zetabar
    out.add_word({letter::eta(i + 1), letter::Zeta}, DiffPoly::constant(-1));
    out += wedge(tau(i - 1, m), DiffForm::basis(letter::ZetaBar));
    return out;
  }
  // conjugate equation: d etabar_i = -etabar_{i+1} ^ zetabar + taubar^{i-1} ^ zeta
  out.add_word({letter::eta_bar(i + 1), letter::ZetaBar}, DiffPoly::constant(-1));
  out += wedge(conjugate(tau(i - 1, m)), DiffForm::basis(letter::Zeta));
  return out;
}

}  // namespace

DiffForm d_form(const DiffForm& w, const PotentialModel& m) {
  DiffForm out;
  for (const auto& [word, c_raw] : w.terms()) {
    // Canonicalize under the tower rewrite first: the structure equations
    // below are expressed in reduced coefficients, so an unreduced input
    // would mix representatives of the same residue class.
    DiffPoly c = reduce(c_raw, m);
    if (c.is_zero()) continue;
    // d(c) ^ word
    DiffForm dc = d_function(c, m);
    for (const auto& [dw, dcc] : dc.terms()) {
      WedgeWord full = dw;
      full.insert(full.end(), word.begin(), word.end());
      out.add_word(std::move(full), dcc);
    }
    // c * sum_k (-1)^{k} prefix ^ d(letter_k) ^ suffix
    for (std::size_t k = 0; k < word.size(); ++k) {
      DiffForm dL = d_letter(word[k], m);
      if (dL.is_zero()) continue;
      GaussScalar sign((k % 2 == 0) ? 1 : -1);
      for (const auto& [dw, dcc] : dL.terms()) {
        WedgeWord full(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
        full.insert(full.end(), dw.begin(), dw.end());
        full.insert(full.end(), word.begin() + static_cast<std::ptrdiff_t>(k) + 1, word.end());
        out.add_word(std::move(full), sign * (c * dcc));
      }
    }
  }
  return out;
}

DiffForm J_apply(const DiffForm& w) {
  if (!w.is_zero() && w.degree() != 1)
    throw std::invalid_argument("J acts on 1-forms only");
  const GaussScalar I = GaussScalar::sqrt_minus_one();
  DiffForm out;
  for (const auto& [word, c] : w.terms()) {
    int L = word[0];
    if (L == letter::Eta0) out.add_word(word, c);
    else if (letter::is_barred(L)) out.add_word(word, (-I) * c);
    else out.add_word(word, I * c);
  }
  return out;
}

DiffForm psi() {
  const GaussScalar half_i = GaussScalar{Rational(0), Rational(1, 2)};
  DiffForm out;
  out.add_word({letter::Zeta, letter::eta(1)}, DiffPoly(-half_i));
  out.add_word({letter::ZetaBar, letter::eta_bar(1)}, DiffPoly(half_i));
  return out;
}

DiffForm mod_ideal(const DiffForm& w) {
  DiffForm out;
  for (const auto& [word, c] : w.terms()) {
    bool keep = true;
    for (int L : word)
      if (letter::is_eta_family(L)) {
        keep = false;
        break;
      }
    if (keep) out.add_word(word, c);
  }
  return out;
}

// ------------------------------------------------------------ frame vectors

void FrameVector::set(int tag, DiffPoly c) {
  if (c.is_zero()) components.erase(tag);
  else components[tag] = std::move(c);
}

DiffPoly FrameVector::get(int tag) const {
  auto it = components.find(tag);
  return it == components.end() ? DiffPoly() : it->second;
}

int dual_letter(int frame_tag) {
  if (frame_tag == frame::Eminus1) return letter::Zeta;
  if (frame_tag == frame::Eminus1Bar) return letter::ZetaBar;
  return frame_tag;  // eta-family tags share their letter code
}

DiffForm interior(const FrameVector& v, const DiffForm& w) {
  DiffForm out;
  for (const auto& [tag, comp] : v.components) {
    int L = dual_letter(tag);
    for (const auto& [word, c] : w.terms()) {
      for (std::size_t k = 0; k < word.size(); ++k) {
        if (word[k] != L) continue;
        WedgeWord rest(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
        rest.insert(rest.end(), word.begin() + static_cast<std::ptrdiff_t>(k) + 1, word.end());
        GaussScalar sign((k % 2 == 0) ? 1 : -1);
        out.add_word(std::move(rest), sign * (comp * c));
        break;  // letters are distinct within a word
      }
    }
  }
  return out;
}

FrameVector s1_vector(const PotentialModel& m, int depth) {
  const GaussScalar I = GaussScalar::sqrt_minus_one();
  FrameVector v;
  DiffPoly q = DiffPoly::var(VarId::z()) * DiffPoly::var(VarId::uj(0)) -
               DiffPoly::var(VarId::zbar()) * DiffPoly::var(VarId::ujbar(0));
  v.set(frame::Eminus1, (-I) * DiffPoly::var(VarId::z()));
  v.set(frame::Eminus1Bar, I * DiffPoly::var(VarId::zbar()));
  v.set(frame::E0, I * q);
  DiffPoly ej = q;
  DiffPoly ebj = q;
  for (int j = 1; j <= depth; ++j) {
    ej = e_minus1(ej, m);
    ebj = e_minus1_bar(ebj, m);
    v.set(frame::Ei(j), I * ej);
    v.set(frame::EiBar(j), I * ebj);
  }
  return v;
}

// -------------------------------------------------------------------- render

std::string render(const DiffForm& w, RenderFormat format) {
  if (format == RenderFormat::Json) {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [word, c] : w.terms()) {
      if (!first) os << ",";
      first = false;
      os << "{\"word\":[";
      for (std::size_t k = 0; k < word.size(); ++k) {
        if (k) os << ",";
        os << "\"" << letter::token(word[k]) << "\"";
      }
      os << "],\"coeff\":" << render(c, RenderFormat::Json) << "}";
    }
    os << "]";
    return os.str();
  }
  if (w.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [word, c] : w.terms()) {
    std::string piece;
    if (format == RenderFormat::Text) {
      piece = "(" + render(c, RenderFormat::Text) + ")";
      for (int L : word) piece += "^" + letter::token(L);
      if (word.empty()) piece += "*1";
    } else {
      piece = "\\left(" + render(c, RenderFormat::Latex) + "\\right)";
      for (std::size_t k = 0; k < word.size(); ++k)
        piece += (k == 0 ? "\\, " : "\\wedge ") + letter::latex(word[k]);
    }
    out += first ? piece : " + " + piece;
    first = false;
  }
  return out;
}

}  // namespace conslaw
