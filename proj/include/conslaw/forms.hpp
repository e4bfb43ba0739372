/** @file forms.hpp
 *  Exterior algebra over the coframe {zeta, zetabar, eta_0, eta_i, etabar_i}
 *  with the structure equations of the prolonged system, the exterior
 *  derivative, the complex structure J, the area form psi, frame vectors
 *  with interior product, and reduction modulo the contact ideal.
 */
#pragma once

#include "conslaw/jetring.hpp"
#include "conslaw/operators.hpp"

#include <map>
#include <vector>

namespace conslaw {

// Basis 1-forms are encoded as small integers ("letters") in the canonical
// order zeta < zetabar < eta0 < eta1 < etabar1 < eta2 < etabar2 < ...
namespace letter {
constexpr int Zeta = 0;
constexpr int ZetaBar = 1;
constexpr int Eta0 = 2;
int eta(int i);                  // i >= 0
int eta_bar(int i);              // i >= 1
bool is_eta_family(int L);       // any eta or etabar letter
int eta_index(int L);            // index i for eta(i)/eta_bar(i); -1 otherwise
bool is_barred(int L);           // zetabar or etabar
int weight_of(int L);            // wd: zeta -1, zetabar +1, eta_i +i, etabar_i -i
int conj_of(int L);              // swaps zeta<->zetabar, eta_i<->etabar_i; fixes eta0
std::string token(int L);        // "zeta", "zetab", "eta0", "eta1", "etab1", ...
std::string latex(int L);
}  // namespace letter

/// Strictly increasing list of letters (canonical wedge word).
using WedgeWord = std::vector<int>;

/// Sparse exterior form: canonical wedge word -> polynomial coefficient.
/// Mixed degrees are representable but never arise in practice.
class DiffForm {
 public:
  using TermMap = std::map<WedgeWord, DiffPoly>;

  DiffForm() = default;

  /// The basis 1-form for a letter.
  static DiffForm basis(int L);
  /// F as a 0-form.
  static DiffForm scalar(DiffPoly F);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  /// Adds c * (unsorted word), normalizing the word and the permutation sign.
  void add_word(WedgeWord word, const DiffPoly& c);

  DiffForm operator-() const;
  DiffForm operator+(const DiffForm& o) const;
  DiffForm operator-(const DiffForm& o) const;
  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  bool operator==(const DiffForm& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffForm& o) const { return !(*this == o); }

  /// Degree of the unique word length; throws if mixed or zero.
  int degree() const;
  /// Coefficient of a canonical word (zero if absent).
  DiffPoly coeff(const WedgeWord& w) const;

 private:
  TermMap terms_;
};

DiffForm operator*(const DiffPoly& c, const DiffForm& w);
DiffForm operator*(const GaussScalar& c, const DiffForm& w);
DiffForm wedge(const DiffForm& a, const DiffForm& b);

/// Letter-wise + coefficient-wise conjugation (with resorting signs).
DiffForm conjugate(const DiffForm& w);

/// wd of a homogeneous form (letters + coefficients); mirrors
/// weighted_degree on polynomials.
WeightedDegree weighted_degree(const DiffForm& w);

/// Exterior derivative of a function:
/// dF = e(F) zeta + ebar(F) zetabar + F_u eta0
///      + sum_i F_{u_{i-1}} eta_i + sum_i F_{ubar_{i-1}} etabar_i.
DiffForm d_function(const DiffPoly& F, const PotentialModel& m);

/// tau^i = sum_{j<=i} C(i,j) (dT^j/du) eta_{i-j}.
DiffForm tau(int i, const PotentialModel& m);

/// Exterior derivative via the structure equations
/// d eta0 = zeta^eta1 + zetabar^etabar1,
/// d eta_i = -eta_{i+1}^zeta + tau^{i-1}^zetabar (and conjugates), d zeta = 0.
DiffForm d_form(const DiffForm& w, const PotentialModel& m);

/// Complex structure on 1-forms: *i on zeta/eta_i (i>=1), *(-i) on
/// zetabar/etabar_i, identity on eta0.
DiffForm J_apply(const DiffForm& w);

/// psi = -(i/2)(zeta^eta1 - zetabar^etabar1); real, wd 0.
DiffForm psi();

/// Drops every word containing an eta-family letter (reduction modulo the
/// contact ideal); only zeta/zetabar words survive.
DiffForm mod_ideal(const DiffForm& w);

// ------------------------------------------------------------ frame vectors

namespace frame {
constexpr int Eminus1 = -2;
constexpr int Eminus1Bar = -1;
constexpr int E0 = letter::Eta0;  // letter code doubles as the dual tag
inline int Ei(int i) { return letter::eta(i); }
inline int EiBar(int i) { return letter::eta_bar(i); }
}  // namespace frame

/// Vector field in the frame; tag -> coefficient (finitely many).
struct FrameVector {
  std::map<int, DiffPoly> components;

  void set(int tag, DiffPoly c);
  DiffPoly get(int tag) const;
};

/// Dual letter annihilated/paired with a frame tag (Eminus1 <-> zeta, ...).
int dual_letter(int frame_tag);

/// Interior product v -| w (antiderivation of degree -1).
DiffForm interior(const FrameVector& v, const DiffForm& w);

/// The rotation vector field of the circle symmetry, with components
/// -i z, i zbar, i q, i e^j(q), i ebar^j(q) populated up to eta-depth
/// `depth` (q = z u_0 - zbar ubar_0).
FrameVector s1_vector(const PotentialModel& m, int depth);

/// Rendering; format mirrors jetring.render per coefficient with wedge
/// words as `zeta^eta1` (text), `\zeta\wedge\eta_1` (latex), or a json
/// list of {word, coeff}.
std::string render(const DiffForm& w, RenderFormat format);

}  // namespace conslaw
