/** @file numcheck.hpp
 *  Numeric desk-scale verification: RK4 integration of the y-independent
 *  reduction u'' = -4 f(u), a jet sampler mapping trajectory points to jet
 *  coordinates via the ODE closure table, and convergence-order reporting
 *  for the linearized equation along actual solutions.
 */
#pragma once

#include "conslaw/jetring.hpp"

#include <map>
#include <string>
#include <vector>

namespace conslaw {

enum class Potential { Sinh, Tzitzeica };

/// f(u) and its u-derivative tower F(n); n = -1 is the antiderivative.
double potential_tower(Potential pot, int n, double u);

/// Rewrite model matched by the concrete potential (sinh: f_uu = f with
/// b = 1; Tzitzeica: f_uu = -f_u + 2 f).
PotentialModel potential_model(Potential pot);

/// Parameter bindings that specialize symbolic generators to the potential.
std::map<std::string, double> potential_params(Potential pot);

struct OdeSetup {
  Potential potential{Potential::Sinh};
  double u0{0.0};
  double up0{0.0};
  double h{1e-2};
  int steps{100};
};

struct Trajectory {
  std::vector<double> x, u, up;
  double energy_drift{0.0};  // max |E(x) - E(0)|, E = u'^2/2 + 4 F(-1)(u)
};

/// Classical fixed-step RK4; throws std::runtime_error on divergence.
Trajectory integrate(const OdeSetup& setup);

/// Closure table u^(n) as a polynomial in (u, u') via u'' -> -4 f(u), and
/// the jet map u_j = 2^{-(j+1)} u^(j+1).
class JetSampler {
 public:
  explicit JetSampler(int max_jet);

  /// Value of the jet coordinate u_j at a trajectory point.
  double jet(int j, Potential pot, double u, double up) const;

  /// Evaluates a polynomial at a trajectory point: jets via the closure
  /// table, tower symbols via the concrete potential, u' as Param("up"),
  /// named parameters from `params`.  Explicit z is rejected.
  double eval(const DiffPoly& p, Potential pot, double u, double up,
              const std::map<std::string, double>& params) const;

  const DiffPoly& closure(int n) const;  // u^(n), n >= 0

 private:
  std::vector<DiffPoly> table_;
};

struct ResidualReport {
  std::vector<double> hs;
  std::vector<double> max_residuals;  // max |D^2_h a + 4 f_u(u) a| per h
  std::vector<double> orders;         // observed order between consecutive hs
  bool order_ok{false};               // all orders within [1.8, 2.2]
};

/// Samples a = P + conj(P) along the trajectory for each step size and
/// reports the second-difference residual of the linearized equation.
ResidualReport linearized_residual(const DiffPoly& P, Potential pot,
                                   const std::map<std::string, double>& params,
                                   double u0, double up0,
                                   const std::vector<double>& hs);

struct EnergyReport {
  std::vector<double> hs;
  std::vector<double> drifts;
  std::vector<double> orders;  // observed RK4 drift order (~4)
};

EnergyReport energy_orders(Potential pot, double u0, double up0,
                           const std::vector<double>& hs);

}  // namespace conslaw
