/** @file symmetry.cpp */
#include "conslaw/symmetry.hpp"

#include "conslaw/operators.hpp"

namespace conslaw {

GenSymmetry evolutionary_vector(const DiffPoly& g, const PotentialModel& m, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  GenSymmetry s;
  s.g = reduce(g, m);
  s.depth = depth;
  s.v.set(frame::E0, s.g);
  DiffPoly ei = s.g, ebi = s.g;
  for (int i = 1; i <= depth; ++i) {
    ei = e_minus1(ei, m);
    ebi = e_minus1_bar(ebi, m);
    s.v.set(frame::Ei(i), ei);
    s.v.set(frame::EiBar(i), ebi);
  }
  return s;
}

GenSymmetry symmetry_from_generating(const DiffPoly& g, const PotentialModel& m, int depth) {
  if (!E_op(g, m).is_zero())
    throw std::invalid_argument("generating function does not solve the linearized equation");
  return evolutionary_vector(g, m, depth);
}

DiffForm lie_check(const GenSymmetry& v, int i, const PotentialModel& m) {
  if (i < 0) throw std::invalid_argument("obstruction index must be >= 0");
  if (v.depth < i + 2) throw std::invalid_argument("insufficient prolongation depth");
  DiffForm eta = DiffForm::basis(letter::eta(i + 1));
  DiffForm lie = interior(v.v, d_form(eta, m)) + d_form(interior(v.v, eta), m);
  return mod_ideal(lie);
}

NoetherResult noether_pair(const DiffPoly& g, int d, const PotentialModel& m) {
  DiffPoly gr = reduce(g, m);
  if (!E_op(gr, m).is_zero())
    throw std::invalid_argument("generating function does not solve the linearized equation");
  NoetherResult res;
  bool has_z = !gr.vars_all([](const VarId& v) {
    return v.tag != VarTag::Z && v.tag != VarTag::Zbar;
  });
  if (has_z || d == 0) {
    res.kind = NoetherKind::Classical;
    res.classical = classical_phi0(m);
    res.message = "weight-0 generating function: classical undifferentiated law";
    return res;
  }
  bool mixing_free = gr.vars_all([](const VarId& v) {
    return v.tag == VarTag::Uj || v.tag == VarTag::FTower || v.tag == VarTag::Param;
  });
  if (!mixing_free || !is_homogeneous_of(gr, d)) {
    res.kind = NoetherKind::Gap;
    res.message =
        "solves the linearized equation but violates the no-mixing conditions: "
        "generalized symmetry without a conservation law in the normal-form space";
    return res;
  }
  res.kind = NoetherKind::NormalForm;
  res.law = build_phi(gr, d, m);
  res.message = "normal-form conservation law";
  return res;
}

}  // namespace conslaw
