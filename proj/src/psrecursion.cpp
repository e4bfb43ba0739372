/** @file psrecursion.cpp */
#include "conslaw/psrecursion.hpp"

#include "conslaw/operators.hpp"

namespace conslaw {

namespace {

bool params_only(const DiffPoly& p) {
  return p.vars_all([](const VarId& v) { return v.tag == VarTag::Param; });
}

}  // namespace

PSChain ps_chain(int n, const DiffPoly& beta) {
  if (n < 1) throw std::invalid_argument("chain length must be >= 1");
  if (!params_only(beta))
    throw std::invalid_argument("beta must be a parameter/rational polynomial");
  PSChain ch;
  ch.beta = beta;
  ch.model = PotentialModel::rule(DiffPoly(), beta);
  const PotentialModel& m = ch.model;
  auto red = [&](DiffPoly p) { return reduce(std::move(p), m); };
  ch.P.push_back(DiffPoly::var(VarId::uj(0)));
  auto theta = [&](int l, int mm) -> const DiffPoly& {
    auto key = std::make_pair(l, mm);
    auto it = ch.theta.find(key);
    if (it == ch.theta.end()) {
      DiffPoly t = ch.P_at(l) * ch.P_at(mm + 1) -
                   e_minus1(ch.P_at(l), m) * e_minus1(ch.P_at(mm), m) +
                   GaussScalar::ratio(1, 4) * beta * ch.phi_at(l) * ch.phi_at(mm);
      it = ch.theta.emplace(key, red(std::move(t))).first;
    }
    return it->second;
  };
  for (int i = 1; i < n; ++i) {
    DiffPoly phi_i;
    if (i % 2 == 1) {
      int l = (i + 1) / 2;
      phi_i = ch.P_at(l) * ch.P_at(l);
      for (int j = 1; j < l; ++j) phi_i += GaussScalar(2) * theta(j, i - j);
    } else {
      int l = i / 2;
      phi_i = ch.P_at(l + 1) * ch.P_at(l) + theta(l, l);
      for (int j = 1; j < l; ++j) phi_i += GaussScalar(2) * theta(j, i - j);
    }
    ch.phi.push_back(red(std::move(phi_i)));
    DiffPoly next = e_minus1(e_minus1(ch.P_at(i), m), m) -
                    GaussScalar::ratio(1, 2) * beta * DiffPoly::var(VarId::uj(0)) * ch.phi_at(i);
    ch.P.push_back(red(std::move(next)));
  }
  return ch;
}

PSVerify verify_ps(int i, const PSChain& chain) {
  if (i < 1 || i > static_cast<int>(chain.P.size()))
    throw std::invalid_argument("chain index out of range");
  const PotentialModel& m = chain.model;
  PSVerify v;
  const DiffPoly& Pi = chain.P_at(i);
  v.kernel_residual = E_op(Pi, m);
  if (i <= static_cast<int>(chain.phi.size())) {
    const DiffPoly& phi = chain.phi_at(i);
    DiffPoly u0 = DiffPoly::var(VarId::uj(0));
    DiffPoly f = DiffPoly::var(VarId::ftower(0));
    v.e_phi_residual = e_minus1(phi, m) - GaussScalar(2) * u0 * e_minus1(Pi, m);
    v.ebar_phi_residual = e_minus1_bar(phi, m) + GaussScalar(2) * f * Pi;
    v.e_phi_residual = reduce(v.e_phi_residual, m);
    v.ebar_phi_residual = reduce(v.ebar_phi_residual, m);
  }
  v.ok = v.kernel_residual.is_zero() && v.e_phi_residual.is_zero() &&
         v.ebar_phi_residual.is_zero();
  return v;
}

}  // namespace conslaw
