/** @file operators.cpp */
#include "conslaw/operators.hpp"

#include <map>
#include <mutex>
#include <set>

namespace conslaw {

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational acc(1);
  for (int j = 0; j < k; ++j) acc *= Rational(n - j, j + 1);
  return acc;
}

const DiffPoly& TCache::get(int i) {
  if (i < 0) throw std::invalid_argument("T index must be >= 0");
  if (table_.empty()) table_.push_back(DiffPoly::var(VarId::ftower(0)));
  while (static_cast<int>(table_.size()) <= i) {
    int next = static_cast<int>(table_.size());  // computing T^{next}
    DiffPoly acc;
    for (int j = 0; j < next; ++j) {
      DiffPoly tju = partial(table_[static_cast<std::size_t>(j)], VarId::base_u());
      acc += GaussScalar(binomial(next - 1, j)) *
             (DiffPoly::var(VarId::uj(next - 1 - j)) * tju);
    }
    table_.push_back(reduce(acc, model_));
  }
  return table_[static_cast<std::size_t>(i)];
}

namespace {

std::string model_key(const PotentialModel& m) {
  if (m.is_generic()) return "G";
  return "R|" + render(m.lam1(), RenderFormat::Json) + "|" +
         render(m.lam2(), RenderFormat::Json);
}

std::mutex g_tcache_mutex;

}  // namespace

const DiffPoly& T_of(int i, const PotentialModel& m) {
  std::lock_guard<std::mutex> lock(g_tcache_mutex);
  static std::map<std::string, TCache> registry;
  auto it = registry.find(model_key(m));
  if (it == registry.end()) it = registry.emplace(model_key(m), TCache(m)).first;
  return it->second.get(i);
}

DiffPoly e_minus1(const DiffPoly& p, const PotentialModel& m) {
  DiffPoly out = partial(p, VarId::z());
  DiffPoly du = partial(p, VarId::base_u());  // includes the tower chain rule
  if (!du.is_zero()) out += DiffPoly::var(VarId::uj(0)) * du;
  std::set<int> js, jbars;
  for (const auto& [mono, c] : p.terms()) {
    for (const auto& [v, e] : mono.factors) {
      if (v.tag == VarTag::Uj) js.insert(v.n);
      else if (v.tag == VarTag::UjBar) jbars.insert(v.n);
    }
  }
  for (int j : js) out += DiffPoly::var(VarId::uj(j + 1)) * partial(p, VarId::uj(j));
  for (int j : jbars) out -= conjugate(T_of(j, m)) * partial(p, VarId::ujbar(j));
  return reduce(out, m);
}

DiffPoly e_minus1_bar(const DiffPoly& p, const PotentialModel& m) {
  return conjugate(e_minus1(conjugate(p), m));
}

DiffPoly e_minus1_pow(const DiffPoly& p, int m, const PotentialModel& model) {
  if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
  DiffPoly out = reduce(p, model);
  for (int k = 0; k < m; ++k) out = e_minus1(out, model);
  return out;
}

DiffPoly e_minus1_bar_pow(const DiffPoly& p, int m, const PotentialModel& model) {
  if (m < 0) throw std::invalid_argument("iteration count must be >= 0");
  DiffPoly out = reduce(p, model);
  for (int k = 0; k < m; ++k) out = e_minus1_bar(out, model);
  return out;
}

DiffPoly E_op(const DiffPoly& p, const PotentialModel& m) {
  DiffPoly out = e_minus1_bar(e_minus1(p, m), m);
  out += DiffPoly::var(VarId::ftower(1)) * p;
  return reduce(out, m);
}

}  // namespace conslaw
