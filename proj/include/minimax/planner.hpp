#pragma once

#include <string>

namespace minimax {

enum class PlanPhase { kOne, kTwo };

struct StepPlan {
  double mu_x = 0.0;
  double mu_y = 0.0;
  double L = 0.0;    // smoothness of P: L_f + L_f^2 / nu
  double tau1 = 0.0;
  double tau3 = 0.0;
  double beta1 = 0.0;
  PlanPhase phase = PlanPhase::kOne;
};

inline constexpr double kDefaultTau3Factor = 80.0;

// Primal-dual step sizes for the joint phase. jgamma_sq is the squared norm
// of the network error operator and must lie in [0, 1). tau3_factor scales
// tau3 = factor * L_f^2 / nu^2.
StepPlan plan_theorem1(double lipschitz, double nu, int num_agents, double jgamma_sq,
                       double horizon, double tau3_factor = kDefaultTau3Factor);

// Dual-only refinement: mu_x = 0 and
// mu_y = min{sqrt(nu / (12 K L_f^2)), (2T + 1) / (nu (T + 1)^2)}.
StepPlan plan_theorem2(double lipschitz, double nu, int num_agents, double horizon);

// The same formula evaluated at iteration i, i.e. the decaying per-round
// schedule the dual-gap recursion telescopes over.
double theorem2_dual_step(double lipschitz, double nu, int num_agents, double iteration);

std::string to_string(PlanPhase phase);

}  // namespace minimax
