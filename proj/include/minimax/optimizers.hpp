#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minimax/linalg.hpp"
#include "minimax/problem.hpp"
#include "minimax/rng.hpp"
#include "minimax/topology.hpp"

namespace minimax {

enum class Algorithm { kDssOg, kCssOg, kSog, kSeg, kSpeg, kGda, kAgda, kAdamDssOg };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

enum class Execution { kSerial, kParallel };

struct StepSizes {
  double primal = 0.0;  // mu_x, may be 0 while the primal block is frozen
  double dual = 0.0;    // mu_y
};

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  friend bool operator==(const AdamParams&, const AdamParams&) = default;
};

// One agent's optimizer memory. (x, y) is the current pair x_{k,i-1} (for the
// extragradient family it is the base point); (x_prev, y_prev) is x_{k,i-2}.
struct AgentState {
  Vec x, y;
  Vec x_prev, y_prev;
  std::optional<Vec> past_gx, past_gy;  // stored stochastic gradients (S-OG, S-PEG)
  Vec m_x, v_x, m_y, v_y;               // Adam moments
  std::int64_t adam_steps = 0;

  static AgentState from_pair(Vec x, Vec y);
};

struct NetworkState {
  std::vector<AgentState> agents;
  std::uint64_t iteration = 0;  // index i of the next round

  int size() const { return static_cast<int>(agents.size()); }
  Mat primal_matrix() const;  // M1 x K
  Mat dual_matrix() const;    // M2 x K
};

struct Direction {
  Vec x;
  Vec y;
};

// g = 2 grad Q(current; xi) - grad Q(previous; xi), with one sample per block
// shared by both evaluations.
Direction ssog_direction(const Problem& problem, int agent, const Vec& x, const Vec& y,
                         const Vec& x_prev, const Vec& y_prev, const Sample& sample_x,
                         const Sample& sample_y);

struct RoundOptions {
  Algorithm algorithm = Algorithm::kDssOg;
  StepSizes steps;
  AdamParams adam;
  bool freeze_primal = false;  // skip primal adaptation and combination
  Execution execution = Execution::kParallel;
};

// Local adaptation of one agent at round `iteration`; returns the
// intermediate (phi, psi) state before combination.
AgentState adapt_agent(const AgentState& s, const Problem& problem, int agent,
                       const RoundOptions& opt, const StreamFactory& streams,
                       std::uint64_t iteration);

// Centralized SS-OG on a single-agent state. For a K > 1
// problem, pass a CentralizedView.
AgentState css_og_step(const AgentState& s, const Problem& problem, StepSizes steps,
                       const StreamFactory& streams, std::uint64_t iteration);

// Baseline single-agent recursions.
AgentState sog_step(const AgentState& s, const Problem& problem, StepSizes steps,
                    const StreamFactory& streams, std::uint64_t iteration);
AgentState seg_step(const AgentState& s, const Problem& problem, StepSizes steps,
                    const StreamFactory& streams, std::uint64_t iteration);
AgentState speg_step(const AgentState& s, const Problem& problem, StepSizes steps,
                     const StreamFactory& streams, std::uint64_t iteration);
AgentState gda_step(const AgentState& s, const Problem& problem, StepSizes steps,
                    const StreamFactory& streams, std::uint64_t iteration);
AgentState agda_step(const AgentState& s, const Problem& problem, StepSizes steps,
                     const StreamFactory& streams, std::uint64_t iteration);
AgentState adam_ssog_step(const AgentState& s, const Problem& problem, StepSizes steps,
                          const AdamParams& adam, const StreamFactory& streams,
                          std::uint64_t iteration);

// One synchronous adapt-then-combine round: every agent adapts, then
// x_k <- sum_l a(l,k) phi_l and y_k <- sum_l a(l,k) psi_l.
NetworkState network_round(const NetworkState& state, const CombinationMatrix& a,
                           const Problem& problem, const RoundOptions& opt,
                           const StreamFactory& streams);

// DSS-OG round.
NetworkState dss_og_round(const NetworkState& state, const CombinationMatrix& a,
                          const Problem& problem, StepSizes steps, const StreamFactory& streams,
                          Execution execution = Execution::kParallel);

void validate_adam(const AdamParams& adam);

}  // namespace minimax
