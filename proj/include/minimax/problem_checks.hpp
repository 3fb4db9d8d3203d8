#pragma once

#include <functional>

#include "minimax/problem.hpp"

namespace minimax {

enum class GradBlock { kBoth, kPrimal, kDual };

// Central differences of the agent's risk value against true_grad. Returns the
// largest componentwise error |fd - g| / max(1, |g|, |fd|).
double finite_difference_check(const Problem& problem, int agent, const Vec& x, const Vec& y,
                               double h, GradBlock block = GradBlock::kBoth);

struct PlProbeResult {
  int probes = 0;
  int violations = 0;
  double min_ratio = 0.0;  // min over probes of |grad_y J|^2 / (2 (P - J))
};

// Checks |grad_y J(x,y)|^2 >= 2 nu (P(x) - J(x,y)) at random points drawn by
// `sampler`, with relative slack `rel_tol`. Requires a declared PL constant
// and an inner max.
PlProbeResult pl_probe(const Problem& problem, int probes, Rng& rng,
                       const std::function<std::pair<Vec, Vec>(Rng&)>& sampler,
                       double rel_tol = 1e-9);

// Streaming mean / variance of a vector-valued Monte Carlo estimator.
struct MonteCarloStats {
  Vec mean;
  Vec std_err;           // per-component standard error of the mean
  double total_variance = 0.0;  // E|g - mean|^2
  int n = 0;
};

MonteCarloStats monte_carlo(int n, const std::function<Vec(int)>& draw);

// |mean - target| <= z * SE, componentwise. Components with zero spread must
// match to 1e-12.
bool within_standard_errors(const MonteCarloStats& s, const Vec& target, double z);

}  // namespace minimax
