/** @file numcheck.cpp */
#include "conslaw/numcheck.hpp"

#include <cmath>
#include <stdexcept>

namespace conslaw {

double potential_tower(Potential pot, int n, double u) {
  if (n < -1) throw std::invalid_argument("tower index must be >= -1");
  switch (pot) {
    case Potential::Sinh:
      if (n == -1) return std::cosh(u);
      return (n % 2 == 0) ? std::sinh(u) : std::cosh(u);
    case Potential::Tzitzeica:
      if (n == -1) return std::exp(u) + 0.5 * std::exp(-2.0 * u);
      return std::exp(u) - std::pow(-2.0, n) * std::exp(-2.0 * u);
  }
  return 0.0;
}

PotentialModel potential_model(Potential pot) {
  switch (pot) {
    case Potential::Sinh:
      return PotentialModel::rule(DiffPoly(), DiffPoly::var(VarId::param("b")));
    case Potential::Tzitzeica:
      return PotentialModel::rule(DiffPoly(GaussScalar(-1)), DiffPoly(GaussScalar(2)));
  }
  return PotentialModel::generic();
}

std::map<std::string, double> potential_params(Potential pot) {
  if (pot == Potential::Sinh) return {{"b", 1.0}};
  return {};
}

Trajectory integrate(const OdeSetup& setup) {
  if (setup.h <= 0.0 || setup.steps < 2)
    throw std::invalid_argument("integration requires h > 0 and steps >= 2");
  auto f = [&](double u) { return potential_tower(setup.potential, 0, u); };
  auto energy = [&](double u, double v) {
    return 0.5 * v * v + 4.0 * potential_tower(setup.potential, -1, u);
  };
  Trajectory tr;
  double u = setup.u0, v = setup.up0;
  const double e0 = energy(u, v);
  tr.x.push_back(0.0);
  tr.u.push_back(u);
  tr.up.push_back(v);
  for (int n = 0; n < setup.steps; ++n) {
    const double h = setup.h;
    // u' = v, v' = -4 f(u)
    double k1u = v, k1v = -4.0 * f(u);
    double k2u = v + 0.5 * h * k1v, k2v = -4.0 * f(u + 0.5 * h * k1u);
    double k3u = v + 0.5 * h * k2v, k3v = -4.0 * f(u + 0.5 * h * k2u);
    double k4u = v + h * k3v, k4v = -4.0 * f(u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(u) || !std::isfinite(v))
      throw std::runtime_error("integration diverged at x = " +
                               std::to_string((n + 1) * h));
    tr.x.push_back((n + 1) * h);
    tr.u.push_back(u);
    tr.up.push_back(v);
    tr.energy_drift = std::max(tr.energy_drift, std::fabs(energy(u, v) - e0));
  }
  return tr;
}

// ----------------------------------------------------------------- sampler

JetSampler::JetSampler(int max_jet) {
  if (max_jet < 0) throw std::invalid_argument("max_jet must be >= 0");
  const VarId up = VarId::param("up");
  table_.push_back(DiffPoly::var(VarId::base_u()));
  table_.push_back(DiffPoly::var(up));
  // d/dx through the closure u'' = -4 f(u):
  //   (d/dx) p = u' dp/du - 4 f dp/du'
  for (int n = 1; n <= max_jet + 1; ++n) {
    const DiffPoly& prev = table_.back();
    DiffPoly next = DiffPoly::var(up) * partial(prev, VarId::base_u()) -
                    GaussScalar(4) * DiffPoly::var(VarId::ftower(0)) * partial(prev, up);
    table_.push_back(std::move(next));
  }
}

const DiffPoly& JetSampler::closure(int n) const {
  return table_.at(static_cast<std::size_t>(n));
}

namespace {

double eval_plain(const DiffPoly& p, Potential pot, double u, double up,
                  const std::map<std::string, double>& params,
                  const std::vector<double>* jets) {
  double acc = 0.0;
  for (const auto& [m, c] : p.terms()) {
    if (c.im != 0)
      throw std::invalid_argument("numeric evaluation expects real coefficients");
    double term = c.to_double_re();
    for (const auto& [v, e] : m.factors) {
      double val = 0.0;
      switch (v.tag) {
        case VarTag::U: val = u; break;
        case VarTag::FTower: val = potential_tower(pot, v.n, u); break;
        case VarTag::Param: {
          const std::string& name = param_name(v.n);
          if (name == "up") { val = up; break; }
          auto it = params.find(name);
          if (it == params.end())
            throw std::invalid_argument("unbound parameter in numeric evaluation: " + name);
          val = it->second;
          break;
        }
        case VarTag::Uj:
        case VarTag::UjBar:
          if (!jets) throw std::invalid_argument("jet variables in a closure polynomial");
          val = (*jets)[static_cast<std::size_t>(v.n)];
          break;
        default:
          throw std::invalid_argument("explicit z in numeric evaluation is unsupported");
      }
      for (int k = 0; k < e; ++k) term *= val;
    }
    acc += term;
  }
  return acc;
}

}  // namespace

double JetSampler::jet(int j, Potential pot, double u, double up) const {
  const DiffPoly& d = closure(j + 1);
  double val = eval_plain(d, pot, u, up, {}, nullptr);
  return std::ldexp(val, -(j + 1));  // 2^{-(j+1)} u^(j+1)
}

double JetSampler::eval(const DiffPoly& p, Potential pot, double u, double up,
                        const std::map<std::string, double>& params) const {
  int max_jet = -1;
  for (const auto& [m, c] : p.terms())
    for (const auto& [v, e] : m.factors)
      if (v.tag == VarTag::Uj || v.tag == VarTag::UjBar) max_jet = std::max(max_jet, static_cast<int>(v.n));
  std::vector<double> jets(static_cast<std::size_t>(max_jet + 1), 0.0);
  for (int j = 0; j <= max_jet; ++j) jets[static_cast<std::size_t>(j)] = jet(j, pot, u, up);
  return eval_plain(p, pot, u, up, params, &jets);
}

// ------------------------------------------------------------------ reports

ResidualReport linearized_residual(const DiffPoly& P, Potential pot,
                                   const std::map<std::string, double>& params,
                                   double u0, double up0,
                                   const std::vector<double>& hs) {
  bool z_free = P.vars_all([](const VarId& v) {
    return v.tag != VarTag::Z && v.tag != VarTag::Zbar;
  });
  if (!z_free)
    throw std::invalid_argument("laws with explicit z are excluded from numeric checks");
  int max_jet = 0;
  for (const auto& [m, c] : P.terms())
    for (const auto& [v, e] : m.factors)
      if (v.tag == VarTag::Uj || v.tag == VarTag::UjBar) max_jet = std::max(max_jet, static_cast<int>(v.n));
  JetSampler sampler(max_jet);
  ResidualReport rep;
  for (double h : hs) {
    OdeSetup setup{pot, u0, up0, h, static_cast<int>(std::lround(1.0 / h))};
    Trajectory tr = integrate(setup);
    std::vector<double> a(tr.u.size());
    for (std::size_t i = 0; i < tr.u.size(); ++i)
      a[i] = 2.0 * sampler.eval(P, pot, tr.u[i], tr.up[i], params);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
      double d2 = (a[i + 1] - 2.0 * a[i] + a[i - 1]) / (h * h);
      double res = std::fabs(d2 + 4.0 * potential_tower(pot, 1, tr.u[i]) * a[i]);
      worst = std::max(worst, res);
    }
    rep.hs.push_back(h);
    rep.max_residuals.push_back(worst);
  }
  rep.order_ok = !rep.hs.empty();
  for (std::size_t i = 0; i + 1 < rep.hs.size(); ++i) {
    double order = std::log(rep.max_residuals[i] / rep.max_residuals[i + 1]) /
                   std::log(rep.hs[i] / rep.hs[i + 1]);
    rep.orders.push_back(order);
    if (!(order >= 1.8 && order <= 2.2)) rep.order_ok = false;
  }
  return rep;
}

EnergyReport energy_orders(Potential pot, double u0, double up0,
                           const std::vector<double>& hs) {
  EnergyReport rep;
  for (double h : hs) {
    OdeSetup setup{pot, u0, up0, h, static_cast<int>(std::lround(1.0 / h))};
    rep.hs.push_back(h);
    rep.drifts.push_back(integrate(setup).energy_drift);
  }
  for (std::size_t i = 0; i + 1 < rep.hs.size(); ++i)
    rep.orders.push_back(std::log(rep.drifts[i] / rep.drifts[i + 1]) /
                         std::log(rep.hs[i] / rep.hs[i + 1]));
  return rep;
}

}  // namespace conslaw
