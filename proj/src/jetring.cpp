/** @file jetring.cpp */
#include "conslaw/jetring.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace conslaw {

// ---------------------------------------------------------------- registry

namespace {
std::mutex g_param_mutex;
std::vector<std::string>& param_table() {
  static std::vector<std::string> table;
  return table;
}
}  // namespace

int param_index(const std::string& name) {
  std::lock_guard<std::mutex> lock(g_param_mutex);
  auto& table = param_table();
  for (std::size_t k = 0; k < table.size(); ++k)
    if (table[k] == name) return static_cast<int>(k);
  table.push_back(name);
  return static_cast<int>(table.size() - 1);
}

const std::string& param_name(int index) {
  std::lock_guard<std::mutex> lock(g_param_mutex);
  return param_table().at(static_cast<std::size_t>(index));
}

VarId VarId::uj(int j) {
  if (j < 0) throw std::invalid_argument("jet index must be >= 0");
  return {VarTag::Uj, j};
}
VarId VarId::ujbar(int j) {
  if (j < 0) throw std::invalid_argument("jet index must be >= 0");
  return {VarTag::UjBar, j};
}
VarId VarId::ftower(int n) {
  if (n < -1) throw std::invalid_argument("tower index must be >= -1");
  return {VarTag::FTower, n};
}
VarId VarId::param(const std::string& name) { return {VarTag::Param, param_index(name)}; }

namespace {
/// Rank classes realizing Param < FTower(-1..) < U < Z < Zbar < Uj(0) <
/// UjBar(0) < Uj(1) < ... ; Param/FTower resolve ties internally.
int var_rank(const VarId& v) {
  switch (v.tag) {
    case VarTag::Param:  return 0;
    case VarTag::FTower: return 1;
    case VarTag::U:      return 2;
    case VarTag::Z:      return 3;
    case VarTag::Zbar:   return 4;
    case VarTag::Uj:     return 5 + 2 * v.n;
    case VarTag::UjBar:  return 6 + 2 * v.n;
  }
  return 0;
}
}  // namespace

bool var_less(const VarId& a, const VarId& b) {
  int ra = var_rank(a), rb = var_rank(b);
  if (ra != rb) return ra < rb;
  if (a.tag == VarTag::Param && b.tag == VarTag::Param)
    return param_name(a.n) < param_name(b.n);
  if (a.tag == VarTag::FTower) return a.n < b.n;
  return false;
}

int var_weight(const VarId& v) {
  switch (v.tag) {
    case VarTag::Z:     return -1;
    case VarTag::Zbar:  return 1;
    case VarTag::Uj:    return v.n + 1;
    case VarTag::UjBar: return -(v.n + 1);
    default:            return 0;
  }
}

VarId var_conjugate(const VarId& v) {
  switch (v.tag) {
    case VarTag::Z:     return VarId::zbar();
    case VarTag::Zbar:  return VarId::z();
    case VarTag::Uj:    return VarId::ujbar(v.n);
    case VarTag::UjBar: return VarId::uj(v.n);
    default:            return v;  // u, parameters, and the (real) tower
  }
}

std::string var_token(const VarId& v) {
  switch (v.tag) {
    case VarTag::Param: return param_name(v.n);
    case VarTag::U:     return "u";
    case VarTag::Z:     return "z";
    case VarTag::Zbar:  return "zb";
    case VarTag::Uj:    return "u" + std::to_string(v.n);
    case VarTag::UjBar: return "ub" + std::to_string(v.n);
    case VarTag::FTower:
      if (v.n == -1) return "Sf";
      if (v.n == 0) return "f";
      if (v.n == 1) return "fu";
      return "F" + std::to_string(v.n);
  }
  return "?";
}

// ---------------------------------------------------------------- monomials

int Monomial::exponent(const VarId& v) const {
  for (const auto& [w, e] : factors)
    if (w == v) return e;
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, e] : factors) d += e;
  return d;
}

int Monomial::weight() const {
  int w = 0;
  for (const auto& [v, e] : factors) w += var_weight(v) * e;
  return w;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < factors.size() || j < o.factors.size()) {
    if (j == o.factors.size() ||
        (i < factors.size() && var_less(factors[i].first, o.factors[j].first))) {
      out.factors.push_back(factors[i++]);
    } else if (i == factors.size() || var_less(o.factors[j].first, factors[i].first)) {
      out.factors.push_back(o.factors[j++]);
    } else {
      out.factors.emplace_back(factors[i].first, factors[i].second + o.factors[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial Monomial::conj() const {
  Monomial out;
  for (const auto& [v, e] : factors) out.factors.emplace_back(var_conjugate(v), e);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return var_less(a.first, b.first); });
  return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [v, e] : o.factors) {
    while (i < factors.size() && var_less(factors[i].first, v)) {
      out.factors.push_back(factors[i++]);
    }
    if (i == factors.size() || !(factors[i].first == v) || factors[i].second < e)
      return std::nullopt;
    if (factors[i].second > e) out.factors.emplace_back(v, factors[i].second - e);
    ++i;
  }
  while (i < factors.size()) out.factors.push_back(factors[i++]);
  return out;
}

bool monomial_display_less(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    const VarId& va = a.factors[i].first;
    const VarId& vb = b.factors[j].first;
    if (va == vb) {
      if (a.factors[i].second != b.factors[j].second)
        return a.factors[i].second > b.factors[j].second;
      ++i;
      ++j;
    } else if (var_less(va, vb)) {
      return true;  // a has the earlier variable -> larger exponent there
    } else {
      return false;
    }
  }
  return i < a.factors.size();
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(GaussScalar c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

DiffPoly DiffPoly::var(const VarId& v, int exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  DiffPoly p;
  Monomial m;
  if (exp > 0) m.factors.emplace_back(v, exp);
  p.terms_.emplace(std::move(m), GaussScalar(1));
  return p;
}

DiffPoly DiffPoly::term(Monomial m, GaussScalar c) {
  DiffPoly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

void DiffPoly::add_term(const Monomial& m, const GaussScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
  DiffPoly out = *this;
  out += o;
  return out;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const {
  DiffPoly out = *this;
  out -= o;
  return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  DiffPoly out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(m1.times(m2), c1 * c2);
  return out;
}

DiffPoly DiffPoly::operator*(const GaussScalar& c) const {
  DiffPoly out;
  if (c.is_zero()) return out;
  for (const auto& [m, c0] : terms_) out.terms_.emplace(m, c0 * c);
  return out;
}

DiffPoly operator*(const GaussScalar& c, const DiffPoly& p) { return p * c; }

const std::pair<const Monomial, GaussScalar>& DiffPoly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

GaussScalar DiffPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussScalar(0) : it->second;
}

// ------------------------------------------------------------ PotentialModel

PotentialModel PotentialModel::generic() { return PotentialModel{}; }

PotentialModel PotentialModel::rule(DiffPoly lam1, DiffPoly lam2) {
  auto params_only = [](const DiffPoly& p) {
    return p.vars_all([](const VarId& v) { return v.tag == VarTag::Param; });
  };
  if (!params_only(lam1) || !params_only(lam2))
    throw std::invalid_argument("rule coefficients must be parameter polynomials");
  PotentialModel m;
  m.generic_ = false;
  m.lam1_ = std::move(lam1);
  m.lam2_ = std::move(lam2);
  return m;
}

// ---------------------------------------------------------------- operations

DiffPoly conjugate(const DiffPoly& p) {
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) out.add_term(m.conj(), c.conj());
  return out;
}

WeightedDegree weighted_degree(const DiffPoly& p) {
  WeightedDegree r;
  if (p.is_zero()) {
    r.zero = true;
    r.homogeneous = true;
    return r;
  }
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    int w = m.weight();
    if (first) {
      r.degree = w;
      r.homogeneous = true;
      first = false;
    } else if (w != r.degree) {
      r.homogeneous = false;
      r.degree = 0;
      return r;
    }
  }
  return r;
}

bool is_homogeneous_of(const DiffPoly& p, int d) {
  WeightedDegree r = weighted_degree(p);
  return r.zero || (r.homogeneous && r.degree == d);
}

DiffPoly partial(const DiffPoly& p, const VarId& v) {
  if (v.tag == VarTag::FTower)
    throw std::invalid_argument("partial w.r.t. tower symbols is not defined");
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t k = 0; k < m.factors.size(); ++k) {
      const auto& [w, e] = m.factors[k];
      bool direct = (w == v);
      bool chain = (v.tag == VarTag::U && w.tag == VarTag::FTower);
      if (!direct && !chain) continue;
      Monomial rest;
      for (std::size_t j = 0; j < m.factors.size(); ++j) {
        if (j == k) {
          if (e > 1) rest.factors.emplace_back(w, e - 1);
        } else {
          rest.factors.push_back(m.factors[j]);
        }
      }
      if (chain) {
        // F(n)^e -> e * F(n)^{e-1} * F(n+1)
        Monomial shifted = rest.times(Monomial{{{VarId::ftower(w.n + 1), 1}}});
        out.add_term(shifted, c * GaussScalar(e));
      } else {
        out.add_term(rest, c * GaussScalar(e));
      }
    }
  }
  return out;
}

DiffPoly reduce(const DiffPoly& p, const PotentialModel& m) {
  if (m.is_generic()) return p;
  int max_n = 1;
  for (const auto& [mo, c] : p.terms())
    for (const auto& [v, e] : mo.factors)
      if (v.tag == VarTag::FTower) max_n = std::max(max_n, static_cast<int>(v.n));
  if (max_n <= 1) return p;
  // rewrite table: R[n] expresses F(n) in F(0), F(1) for n >= 2
  std::vector<DiffPoly> R(static_cast<std::size_t>(max_n) + 1);
  R[0] = DiffPoly::var(VarId::ftower(0));
  R[1] = DiffPoly::var(VarId::ftower(1));
  for (int n = 2; n <= max_n; ++n)
    R[static_cast<std::size_t>(n)] =
        m.lam1() * R[static_cast<std::size_t>(n - 1)] + m.lam2() * R[static_cast<std::size_t>(n - 2)];
  DiffPoly out;
  for (const auto& [mo, c] : p.terms()) {
    Monomial core;
    DiffPoly high(GaussScalar(1));
    bool any_high = false;
    for (const auto& [v, e] : mo.factors) {
      if (v.tag == VarTag::FTower && v.n >= 2) {
        any_high = true;
        for (int k = 0; k < e; ++k) high = high * R[static_cast<std::size_t>(v.n)];
      } else {
        core.factors.emplace_back(v, e);
      }
    }
    if (!any_high) {
      out.add_term(mo, c);
    } else {
      out += DiffPoly::term(core, c) * high;
    }
  }
  return out;
}

// ------------------------------------------------------------------- render

namespace {

/// Rational magnitude as text: "3", "(1/2)" when `paren_fraction`.
std::string rat_text(const Rational& r, bool paren_fraction) {
  std::string s = rational_to_string(r);
  if (paren_fraction && denominator(r) != 1) return "(" + s + ")";
  return s;
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m.factors) {
    if (!s.empty()) s += "*";
    s += var_token(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string latex_var(const VarId& v) {
  switch (v.tag) {
    case VarTag::Param: return param_name(v.n);
    case VarTag::U:     return "u";
    case VarTag::Z:     return "z";
    case VarTag::Zbar:  return "\\bar{z}";
    case VarTag::Uj:    return "u_{" + std::to_string(v.n) + "}";
    case VarTag::UjBar: return "\\bar{u}_{" + std::to_string(v.n) + "}";
    case VarTag::FTower:
      if (v.n == -1) return "{\\textstyle\\int} f";
      if (v.n == 0) return "f";
      if (v.n == 1) return "f_u";
      return "f^{(" + std::to_string(v.n) + ")}";
  }
  return "?";
}

std::string rat_latex(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  std::string num = numerator(r).str();
  bool neg = !num.empty() && num[0] == '-';
  if (neg) num = num.substr(1);
  return (neg ? std::string("-") : std::string()) + "\\frac{" + num + "}{" +
         denominator(r).str() + "}";
}

std::string monomial_latex(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m.factors) {
    if (!s.empty()) s += " ";
    s += latex_var(v);
    if (e > 1) s += "^{" + std::to_string(e) + "}";
  }
  return s;
}

std::string render_text(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string piece;
    bool negative = false;
    if (c.is_real()) {
      negative = c.re < 0;
      Rational mag = negative ? Rational(-c.re) : c.re;
      if (m.is_one()) {
        piece = rational_to_string(mag);
      } else if (mag == 1) {
        piece = monomial_text(m);
      } else {
        piece = rat_text(mag, true) + "*" + monomial_text(m);
      }
    } else if (c.re == 0) {
      negative = c.im < 0;
      Rational mag = negative ? Rational(-c.im) : c.im;
      std::string coeff = (mag == 1) ? "i" : rat_text(mag, true) + "*i";
      piece = m.is_one() ? coeff : coeff + "*" + monomial_text(m);
    } else {
      // mixed Gaussian coefficient: always parenthesized, never sign-split
      std::string inner = rational_to_string(c.re);
      if (c.im < 0) {
        Rational mag = -c.im;
        inner += " - " + (mag == 1 ? std::string("i") : rational_to_string(mag) + "*i");
      } else {
        inner += " + " + (c.im == 1 ? std::string("i") : rational_to_string(c.im) + "*i");
      }
      piece = "(" + inner + ")";
      if (!m.is_one()) piece += "*" + monomial_text(m);
    }
    if (first) {
      out = (negative ? "-" : "") + piece;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + piece;
    }
  }
  return out;
}

std::string render_latex(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string piece;
    bool negative = false;
    if (c.is_real()) {
      negative = c.re < 0;
      Rational mag = negative ? Rational(-c.re) : c.re;
      if (m.is_one()) {
        piece = rat_latex(mag);
      } else if (mag == 1) {
        piece = monomial_latex(m);
      } else {
        piece = rat_latex(mag) + " " + monomial_latex(m);
      }
    } else if (c.re == 0) {
      negative = c.im < 0;
      Rational mag = negative ? Rational(-c.im) : c.im;
      std::string coeff =
          (mag == 1) ? "\\sqrt{-1}" : rat_latex(mag) + "\\sqrt{-1}";
      piece = m.is_one() ? coeff : coeff + "\\, " + monomial_latex(m);
    } else {
      piece = "\\left(" + rat_latex(c.re) +
              (c.im < 0 ? " - " + rat_latex(Rational(-c.im)) : " + " + rat_latex(c.im)) +
              "\\sqrt{-1}\\right)";
      if (!m.is_one()) piece += "\\, " + monomial_latex(m);
    }
    if (first) {
      out = (negative ? "-" : "") + piece;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + piece;
    }
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string render_json(const DiffPoly& p) {
  std::ostringstream os;
  os << "{\"terms\":[";
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << ",";
    first = false;
    os << "{\"c\":[\"" << rational_to_string(c.re) << "\",\"" << rational_to_string(c.im)
       << "\"],\"m\":{";
    bool fv = true;
    for (const auto& [v, e] : m.factors) {
      if (!fv) os << ",";
      fv = false;
      os << "\"" << json_escape(var_token(v)) << "\":" << e;
    }
    os << "}}";
  }
  os << "]}";
  return os.str();
}

}  // namespace

std::string render(const DiffPoly& p, RenderFormat format) {
  switch (format) {
    case RenderFormat::Text:  return render_text(p);
    case RenderFormat::Latex: return render_latex(p);
    case RenderFormat::Json:  return render_json(p);
  }
  return {};
}

// -------------------------------------------------------------------- parse

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos{0};

  explicit Parser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool peek(char ch) {
    skip_ws();
    return pos < text.size() && text[pos] == ch;
  }

  bool eat(char ch) {
    if (peek(ch)) {
      ++pos;
      return true;
    }
    return false;
  }

  DiffPoly parse() {
    DiffPoly p = expr();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
    return p;
  }

  DiffPoly expr() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else eat('+');
    DiffPoly acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  DiffPoly term() {
    DiffPoly acc = factor();
    while (true) {
      skip_ws();
      if (eat('*')) acc = acc * factor();
      else break;
    }
    return acc;
  }

  DiffPoly factor() {
    DiffPoly base_p = base();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("expected integer exponent");
      int e = std::stoi(text.substr(start, pos - start));
      DiffPoly out = DiffPoly::constant(1);
      for (int k = 0; k < e; ++k) out = out * base_p;
      return out;
    }
    return base_p;
  }

  DiffPoly base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char ch = text[pos];
    if (ch == '(') {
      ++pos;
      DiffPoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return number();
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return identifier();
    fail(std::string("unexpected character '") + ch + "'");
  }

  DiffPoly number() {
    auto digits = [&]() {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("expected digits");
      return text.substr(start, pos - start);
    };
    std::string num = digits();
    std::size_t save = pos;
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      skip_ws();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string den = digits();
        return DiffPoly(GaussScalar(rational_from_string(num + "/" + den)));
      }
      fail("expected denominator digits");
    }
    pos = save;
    return DiffPoly(GaussScalar(rational_from_string(num)));
  }

  DiffPoly identifier() {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string id = text.substr(start, pos - start);
    if (id == "i") return DiffPoly(GaussScalar::sqrt_minus_one());
    if (id == "z") return DiffPoly::var(VarId::z());
    if (id == "zb") return DiffPoly::var(VarId::zbar());
    if (id == "u") return DiffPoly::var(VarId::base_u());
    if (id == "f") return DiffPoly::var(VarId::ftower(0));
    if (id == "fu") return DiffPoly::var(VarId::ftower(1));
    if (id == "Sf") return DiffPoly::var(VarId::ftower(-1));
    auto all_digits = [](const std::string& s) {
      if (s.empty()) return false;
      for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      return true;
    };
    if (id.size() > 1 && id[0] == 'u' && all_digits(id.substr(1)))
      return DiffPoly::var(VarId::uj(std::stoi(id.substr(1))));
    if (id.size() > 2 && id.rfind("ub", 0) == 0 && all_digits(id.substr(2)))
      return DiffPoly::var(VarId::ujbar(std::stoi(id.substr(2))));
    if (id.size() > 1 && id[0] == 'F' && all_digits(id.substr(1)))
      return DiffPoly::var(VarId::ftower(std::stoi(id.substr(1))));
    return DiffPoly::var(VarId::param(id));
  }
};

}  // namespace

DiffPoly parse_expr(const std::string& text) {
  Parser p(text);
  return p.parse();
}

}  // namespace conslaw
