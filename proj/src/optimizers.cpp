#include "minimax/optimizers.hpp"

#include <cmath>
#include <utility>

#include "minimax/errors.hpp"
#include "minimax/kernels.hpp"

namespace minimax {

namespace {

struct NamedAlgorithm {
  Algorithm algo;
  const char* name;
};

constexpr NamedAlgorithm kNames[] = {
    {Algorithm::kDssOg, "dss-og"}, {Algorithm::kCssOg, "css-og"},
    {Algorithm::kSog, "s-og"},     {Algorithm::kSeg, "s-eg"},
    {Algorithm::kSpeg, "s-peg"},   {Algorithm::kGda, "gda"},
    {Algorithm::kAgda, "agda"},    {Algorithm::kAdamDssOg, "adam-dss-og"},
};

Sample draw(const Problem& problem, int agent, SampleTag tag, const StreamFactory& streams,
            std::uint64_t iteration, StreamTag stream_tag) {
  Rng rng = streams.stream(static_cast<std::uint64_t>(agent), iteration, stream_tag);
  return problem.draw_sample(agent, tag, rng);
}

void check_steps(const StepSizes& steps) {
  if (!(steps.primal >= 0.0) || !(steps.dual >= 0.0) || !std::isfinite(steps.primal) ||
      !std::isfinite(steps.dual)) {
    throw InvalidArgument("step sizes must be finite and nonnegative");
  }
}

// Moves the current pair into the history slot and installs the new one.
AgentState shifted(const AgentState& s, Vec x, Vec y) {
  AgentState out = s;
  out.x_prev = s.x;
  out.y_prev = s.y;
  out.x = std::move(x);
  out.y = std::move(y);
  return out;
}

void adam_update(Vec& m, Vec& v, const Vec& g, const AdamParams& p, double bc1, double bc2,
                 Vec& step) {
  if (m.size() != g.size()) m = Vec::Zero(g.size());
  if (v.size() != g.size()) v = Vec::Zero(g.size());
  m = p.beta1 * m + (1.0 - p.beta1) * g;
  v = p.beta2 * v + (1.0 - p.beta2) * g.cwiseAbs2();
  step.resize(g.size());
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    step[j] = (m[j] / bc1) / (std::sqrt(v[j] / bc2) + p.eps);
  }
}

AgentState ssog_adapt(const AgentState& s, const Problem& problem, int agent, StepSizes steps,
                      bool freeze_primal, const StreamFactory& streams, std::uint64_t iteration) {
  const Sample sy = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kGradY);
  Vec gy = 2.0 * problem.stoch_grad_y(agent, s.x, s.y, sy) -
           problem.stoch_grad_y(agent, s.x_prev, s.y_prev, sy);
  Vec y = s.y + steps.dual * gy;
  if (freeze_primal) {
    AgentState out = s;
    out.y_prev = s.y;
    out.y = std::move(y);
    out.x_prev = s.x;
    return out;
  }
  const Sample sx = draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kGradX);
  Vec gx = 2.0 * problem.stoch_grad_x(agent, s.x, s.y, sx) -
           problem.stoch_grad_x(agent, s.x_prev, s.y_prev, sx);
  Vec x = s.x - steps.primal * gx;
  return shifted(s, std::move(x), std::move(y));
}

}  // namespace

std::string to_string(Algorithm a) {
  for (const auto& n : kNames) {
    if (n.algo == a) return n.name;
  }
  throw InvalidArgument("unknown algorithm");
}

Algorithm algorithm_from_string(const std::string& s) {
  for (const auto& n : kNames) {
    if (s == n.name) return n.algo;
  }
  throw InvalidArgument("unknown algorithm: " + s);
}

AgentState AgentState::from_pair(Vec x, Vec y) {
  AgentState s;
  s.x_prev = x;
  s.y_prev = y;
  s.x = std::move(x);
  s.y = std::move(y);
  return s;
}

Mat NetworkState::primal_matrix() const {
  if (agents.empty()) return {};
  Mat m(agents.front().x.size(), size());
  for (int k = 0; k < size(); ++k) m.col(k) = agents[k].x;
  return m;
}

Mat NetworkState::dual_matrix() const {
  if (agents.empty()) return {};
  Mat m(agents.front().y.size(), size());
  for (int k = 0; k < size(); ++k) m.col(k) = agents[k].y;
  return m;
}

Direction ssog_direction(const Problem& problem, int agent, const Vec& x, const Vec& y,
                         const Vec& x_prev, const Vec& y_prev, const Sample& sample_x,
                         const Sample& sample_y) {
  Direction d;
  d.x = 2.0 * problem.stoch_grad_x(agent, x, y, sample_x) -
        problem.stoch_grad_x(agent, x_prev, y_prev, sample_x);
  d.y = 2.0 * problem.stoch_grad_y(agent, x, y, sample_y) -
        problem.stoch_grad_y(agent, x_prev, y_prev, sample_y);
  return d;
}

void validate_adam(const AdamParams& adam) {
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
    throw InvalidArgument("adam betas must lie in [0, 1)");
  }
  if (!(adam.eps > 0.0)) throw InvalidArgument("adam eps must be positive");
}

AgentState css_og_step(const AgentState& s, const Problem& problem, StepSizes steps,
                       const StreamFactory& streams, std::uint64_t iteration) {
  check_steps(steps);
  return ssog_adapt(s, problem, 0, steps, false, streams, iteration);
}

namespace {

AgentState sog_adapt(const AgentState& s, const Problem& problem, int agent, StepSizes steps,
                     const StreamFactory& streams, std::uint64_t iteration) {
  const Sample sx = draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kGradX);
  const Sample sy = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kGradY);
  Vec gx = problem.stoch_grad_x(agent, s.x, s.y, sx);
  Vec gy = problem.stoch_grad_y(agent, s.x, s.y, sy);
  const Vec& px = s.past_gx ? *s.past_gx : gx;
  const Vec& py = s.past_gy ? *s.past_gy : gy;
  Vec x = s.x - steps.primal * (2.0 * gx - px);
  Vec y = s.y + steps.dual * (2.0 * gy - py);
  AgentState out = shifted(s, std::move(x), std::move(y));
  out.past_gx = std::move(gx);
  out.past_gy = std::move(gy);
  return out;
}

AgentState seg_adapt(const AgentState& s, const Problem& problem, int agent, StepSizes steps,
                     const StreamFactory& streams, std::uint64_t iteration) {
  const Sample ex = draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kExtraX);
  const Sample ey = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kExtraY);
  const Vec xh = s.x - steps.primal * problem.stoch_grad_x(agent, s.x, s.y, ex);
  const Vec yh = s.y + steps.dual * problem.stoch_grad_y(agent, s.x, s.y, ey);
  const Sample sx = draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kGradX);
  const Sample sy = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kGradY);
  Vec x = s.x - steps.primal * problem.stoch_grad_x(agent, xh, yh, sx);
  Vec y = s.y + steps.dual * problem.stoch_grad_y(agent, xh, yh, sy);
  return shifted(s, std::move(x), std::move(y));
}

AgentState speg_adapt(const AgentState& s, const Problem& problem, int agent, StepSizes steps,
                      const StreamFactory& streams, std::uint64_t iteration) {
  Vec px, py;
  if (s.past_gx && s.past_gy) {
    px = *s.past_gx;
    py = *s.past_gy;
  } else {
    const Sample ex =
        draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kExtraX);
    const Sample ey = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kExtraY);
    px = problem.stoch_grad_x(agent, s.x, s.y, ex);
    py = problem.stoch_grad_y(agent, s.x, s.y, ey);
  }
  const Vec xh = s.x - steps.primal * px;
  const Vec yh = s.y + steps.dual * py;
  const Sample sx = draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kGradX);
  const Sample sy = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kGradY);
  Vec gx = problem.stoch_grad_x(agent, xh, yh, sx);
  Vec gy = problem.stoch_grad_y(agent, xh, yh, sy);
  Vec x = s.x - steps.primal * gx;
  Vec y = s.y + steps.dual * gy;
  AgentState out = shifted(s, std::move(x), std::move(y));
  out.past_gx = std::move(gx);
  out.past_gy = std::move(gy);
  return out;
}

AgentState gda_adapt(const AgentState& s, const Problem& problem, int agent, StepSizes steps,
                     bool alternating, const StreamFactory& streams, std::uint64_t iteration) {
  const Sample sx = draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kGradX);
  const Sample sy = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kGradY);
  Vec x = s.x - steps.primal * problem.stoch_grad_x(agent, s.x, s.y, sx);
  Vec y = s.y + steps.dual * problem.stoch_grad_y(agent, alternating ? x : s.x, s.y, sy);
  return shifted(s, std::move(x), std::move(y));
}

AgentState adam_adapt(const AgentState& s, const Problem& problem, int agent, StepSizes steps,
                      const AdamParams& adam, bool freeze_primal, const StreamFactory& streams,
                      std::uint64_t iteration) {
  AgentState out = s;
  out.adam_steps = s.adam_steps + 1;
  const double t = static_cast<double>(out.adam_steps);
  const double bc1 = 1.0 - std::pow(adam.beta1, t);
  const double bc2 = 1.0 - std::pow(adam.beta2, t);
  Vec step;

  const Sample sy = draw(problem, agent, SampleTag::kDual, streams, iteration, StreamTag::kGradY);
  const Vec gy = 2.0 * problem.stoch_grad_y(agent, s.x, s.y, sy) -
                 problem.stoch_grad_y(agent, s.x_prev, s.y_prev, sy);
  adam_update(out.m_y, out.v_y, gy, adam, bc1, bc2, step);
  out.y_prev = s.y;
  out.y = s.y + steps.dual * step;

  out.x_prev = s.x;
  if (!freeze_primal) {
    const Sample sx =
        draw(problem, agent, SampleTag::kPrimal, streams, iteration, StreamTag::kGradX);
    const Vec gx = 2.0 * problem.stoch_grad_x(agent, s.x, s.y, sx) -
                   problem.stoch_grad_x(agent, s.x_prev, s.y_prev, sx);
    adam_update(out.m_x, out.v_x, gx, adam, bc1, bc2, step);
    out.x = s.x - steps.primal * step;
  }
  return out;
}

}  // namespace

AgentState adapt_agent(const AgentState& s, const Problem& problem, int agent,
                       const RoundOptions& opt, const StreamFactory& streams,
                       std::uint64_t iteration) {
  switch (opt.algorithm) {
    case Algorithm::kDssOg:
    case Algorithm::kCssOg:
      return ssog_adapt(s, problem, agent, opt.steps, opt.freeze_primal, streams, iteration);
    case Algorithm::kAdamDssOg:
      return adam_adapt(s, problem, agent, opt.steps, opt.adam, opt.freeze_primal, streams,
                        iteration);
    default:
      break;
  }
  if (opt.freeze_primal) {
    throw InvalidArgument("freezing the primal block needs an SS-OG based algorithm");
  }
  switch (opt.algorithm) {
    case Algorithm::kSog:
      return sog_adapt(s, problem, agent, opt.steps, streams, iteration);
    case Algorithm::kSeg:
      return seg_adapt(s, problem, agent, opt.steps, streams, iteration);
    case Algorithm::kSpeg:
      return speg_adapt(s, problem, agent, opt.steps, streams, iteration);
    case Algorithm::kGda:
      return gda_adapt(s, problem, agent, opt.steps, false, streams, iteration);
    case Algorithm::kAgda:
      return gda_adapt(s, problem, agent, opt.steps, true, streams, iteration);
    default:
      throw InvalidArgument("unknown algorithm");
  }
}

AgentState sog_step(const AgentState& s, const Problem& problem, StepSizes steps,
                    const StreamFactory& streams, std::uint64_t iteration) {
  check_steps(steps);
  return sog_adapt(s, problem, 0, steps, streams, iteration);
}

AgentState seg_step(const AgentState& s, const Problem& problem, StepSizes steps,
                    const StreamFactory& streams, std::uint64_t iteration) {
  check_steps(steps);
  return seg_adapt(s, problem, 0, steps, streams, iteration);
}

AgentState speg_step(const AgentState& s, const Problem& problem, StepSizes steps,
                     const StreamFactory& streams, std::uint64_t iteration) {
  check_steps(steps);
  return speg_adapt(s, problem, 0, steps, streams, iteration);
}

AgentState gda_step(const AgentState& s, const Problem& problem, StepSizes steps,
                    const StreamFactory& streams, std::uint64_t iteration) {
  check_steps(steps);
  return gda_adapt(s, problem, 0, steps, false, streams, iteration);
}

AgentState agda_step(const AgentState& s, const Problem& problem, StepSizes steps,
                     const StreamFactory& streams, std::uint64_t iteration) {
  check_steps(steps);
  return gda_adapt(s, problem, 0, steps, true, streams, iteration);
}

AgentState adam_ssog_step(const AgentState& s, const Problem& problem, StepSizes steps,
                          const AdamParams& adam, const StreamFactory& streams,
                          std::uint64_t iteration) {
  check_steps(steps);
  validate_adam(adam);
  return adam_adapt(s, problem, 0, steps, adam, false, streams, iteration);
}

NetworkState network_round(const NetworkState& state, const CombinationMatrix& a,
                           const Problem& problem, const RoundOptions& opt,
                           const StreamFactory& streams) {
  const int n = state.size();
  if (a.size() != n || problem.num_agents() != n) {
    throw InvalidArgument("agent count, combination matrix and problem disagree");
  }
  check_steps(opt.steps);
  if (opt.algorithm == Algorithm::kAdamDssOg) validate_adam(opt.adam);
  const Dims dims = problem.dims();
  for (const auto& s : state.agents) {
    if (s.x.size() != dims.primal || s.y.size() != dims.dual ||
        s.x_prev.size() != dims.primal || s.y_prev.size() != dims.dual) {
      throw InvalidArgument("agent state dimensions do not match the problem");
    }
  }

  NetworkState next;
  next.iteration = state.iteration + 1;
  next.agents.resize(static_cast<std::size_t>(n));

  // Phase one: every agent adapts from the previous round's combined state.
  if (opt.execution == Execution::kParallel && n > 1) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
      try {
        next.agents[k] = adapt_agent(state.agents[k], problem, k, opt, streams, state.iteration);
      } catch (...) {
#pragma omp critical(minimax_round_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (int k = 0; k < n; ++k) {
      next.agents[k] = adapt_agent(state.agents[k], problem, k, opt, streams, state.iteration);
    }
  }

  // Phase two: combination of the intermediate iterates.
  const auto combine = opt.execution == Execution::kParallel ? kernels::combine_parallel
                                                             : kernels::combine_serial;
  Mat mixed;
  if (!opt.freeze_primal) {
    combine(a, next.primal_matrix(), mixed);
    for (int k = 0; k < n; ++k) next.agents[k].x = mixed.col(k);
  }
  combine(a, next.dual_matrix(), mixed);
  for (int k = 0; k < n; ++k) next.agents[k].y = mixed.col(k);
  return next;
}

NetworkState dss_og_round(const NetworkState& state, const CombinationMatrix& a,
                          const Problem& problem, StepSizes steps, const StreamFactory& streams,
                          Execution execution) {
  RoundOptions opt;
  opt.algorithm = Algorithm::kDssOg;
  opt.steps = steps;
  opt.execution = execution;
  return network_round(state, a, problem, opt, streams);
}

}  // namespace minimax
