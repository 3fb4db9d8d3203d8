#include "minimax/planner.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "minimax/errors.hpp"

namespace minimax {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

double min_of(std::initializer_list<double> values) { return std::min(values); }

}  // namespace

StepPlan plan_theorem1(double lipschitz, double nu, int num_agents, double jgamma_sq,
                       double horizon, double tau3_factor) {
  require_positive(lipschitz, "L_f");
  require_positive(nu, "nu");
  require_positive(tau3_factor, "tau3 factor");
  if (num_agents < 1) throw InvalidArgument("K must be at least 1");
  if (!(horizon >= 1.0)) throw InvalidArgument("T must be at least 1");
  if (!(jgamma_sq >= 0.0 && jgamma_sq < 1.0)) {
    throw InvalidArgument("jgamma_sq must lie in [0, 1)");
  }
  const double lf2 = lipschitz * lipschitz;
  const double lf4 = lf2 * lf2;
  const double nu2 = nu * nu;
  const double k = num_agents;

  StepPlan plan;
  plan.phase = PlanPhase::kOne;
  plan.L = lipschitz + lf2 / nu;
  plan.tau1 = 80.0 * lf4 / nu2;
  plan.tau3 = tau3_factor * lf2 / nu2;
  plan.beta1 = 96.0 * k * lf4 / nu2 + 48.0 * k * lf2;
  plan.mu_y = min_of({1.0 / nu, 2.0 * lf2 / (nu * plan.beta1),
                      (1.0 - jgamma_sq) / std::sqrt(horizon), 1.0});
  plan.mu_x = min_of({nu2 * plan.mu_y / (6.0 * lf2), 1.0 / (2.0 * (plan.L + lipschitz)),
                      1.0 / (4.0 * plan.L), plan.mu_y / (4.0 * plan.tau3),
                      1.0 / (2.0 * std::sqrt(plan.tau1 + plan.beta1)), plan.mu_y});
  return plan;
}

double theorem2_dual_step(double lipschitz, double nu, int num_agents, double iteration) {
  require_positive(lipschitz, "L_f");
  require_positive(nu, "nu");
  if (num_agents < 1) throw InvalidArgument("K must be at least 1");
  if (!(iteration >= 0.0)) throw InvalidArgument("T must be nonnegative");
  const double cap = std::sqrt(nu / (12.0 * num_agents * lipschitz * lipschitz));
  const double t = iteration;
  return std::min(cap, (2.0 * t + 1.0) / (nu * (t + 1.0) * (t + 1.0)));
}

StepPlan plan_theorem2(double lipschitz, double nu, int num_agents, double horizon) {
  StepPlan plan;
  plan.phase = PlanPhase::kTwo;
  plan.mu_x = 0.0;
  plan.mu_y = theorem2_dual_step(lipschitz, nu, num_agents, horizon);
  plan.L = lipschitz + lipschitz * lipschitz / nu;
  return plan;
}

std::string to_string(PlanPhase phase) { return phase == PlanPhase::kOne ? "one" : "two"; }

}  // namespace minimax
