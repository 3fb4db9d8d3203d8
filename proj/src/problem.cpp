#include "minimax/problem.hpp"

#include "minimax/errors.hpp"

namespace minimax {

Problem::Problem(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidArgument("problem needs at least one agent");
  for (double w : weights_) {
    if (!(w > 0.0)) throw InvalidArgument("agent weights must be positive");
  }
}

Vec Problem::global_grad_x(const Vec& x, const Vec& y) const {
  Vec g = Vec::Zero(dims().primal);
  for (int k = 0; k < num_agents(); ++k) g += weights_[k] * true_grad_x(k, x, y);
  return g;
}

Vec Problem::global_grad_y(const Vec& x, const Vec& y) const {
  Vec g = Vec::Zero(dims().dual);
  for (int k = 0; k < num_agents(); ++k) g += weights_[k] * true_grad_y(k, x, y);
  return g;
}

double Problem::value(const Vec& x, const Vec& y) const {
  double v = 0.0;
  for (int k = 0; k < num_agents(); ++k) v += weights_[k] * local_value(k, x, y);
  return v;
}

std::vector<double> uniform_weights(int num_agents) {
  if (num_agents < 1) throw InvalidArgument("need at least one agent");
  return std::vector<double>(num_agents, 1.0 / num_agents);
}

CentralizedView::CentralizedView(ProblemPtr inner)
    : Problem({1.0}), inner_(std::move(inner)) {}

Sample CentralizedView::draw_sample(int /*agent*/, SampleTag tag, Rng& rng) const {
  Sample fused;
  for (int k = 0; k < inner_->num_agents(); ++k) {
    Sample s = inner_->draw_sample(k, tag, rng);
    fused.values.push_back(static_cast<double>(s.values.size()));
    fused.values.insert(fused.values.end(), s.values.begin(), s.values.end());
    if (k == 0) fused.id = s.id;
  }
  return fused;
}

std::vector<Sample> CentralizedView::split(const Sample& s) const {
  std::vector<Sample> parts;
  parts.reserve(inner_->num_agents());
  std::size_t pos = 0;
  for (int k = 0; k < inner_->num_agents(); ++k) {
    if (pos >= s.values.size()) throw InvalidArgument("fused sample is truncated");
    const auto n = static_cast<std::size_t>(s.values[pos++]);
    Sample part;
    part.values.assign(s.values.begin() + pos, s.values.begin() + pos + n);
    part.id = s.id;
    pos += n;
    parts.push_back(std::move(part));
  }
  return parts;
}

Vec CentralizedView::stoch_grad_x(int, const Vec& x, const Vec& y, const Sample& s) const {
  const auto parts = split(s);
  const auto& p = inner_->weights();
  Vec g = p[0] * inner_->stoch_grad_x(0, x, y, parts[0]);
  for (int k = 1; k < inner_->num_agents(); ++k) g += p[k] * inner_->stoch_grad_x(k, x, y, parts[k]);
  return g;
}

Vec CentralizedView::stoch_grad_y(int, const Vec& x, const Vec& y, const Sample& s) const {
  const auto parts = split(s);
  const auto& p = inner_->weights();
  Vec g = p[0] * inner_->stoch_grad_y(0, x, y, parts[0]);
  for (int k = 1; k < inner_->num_agents(); ++k) g += p[k] * inner_->stoch_grad_y(k, x, y, parts[k]);
  return g;
}

Vec CentralizedView::true_grad_x(int, const Vec& x, const Vec& y) const {
  return inner_->global_grad_x(x, y);
}

Vec CentralizedView::true_grad_y(int, const Vec& x, const Vec& y) const {
  return inner_->global_grad_y(x, y);
}

double CentralizedView::local_value(int, const Vec& x, const Vec& y) const {
  return inner_->value(x, y);
}

ProblemConstants CentralizedView::constants() const {
  ProblemConstants c = inner_->constants();
  // Variance of the p-weighted sum of independent local gradients.
  double var = 0.0;
  for (int k = 0; k < inner_->num_agents(); ++k) {
    const double pk = inner_->weights()[k];
    var += pk * pk * (k < static_cast<int>(c.noise.size()) ? c.noise[k] : 0.0);
  }
  c.noise = {var};
  c.heterogeneity = 0.0;
  return c;
}

CountingProblem::CountingProblem(ProblemPtr inner)
    : Problem(inner->weights()), inner_(std::move(inner)) {}

Sample CountingProblem::draw_sample(int agent, SampleTag tag, Rng& rng) const {
  Sample s = inner_->draw_sample(agent, tag, rng);
  s.id = next_id_.fetch_add(1);
  draws_.fetch_add(1);
  return s;
}

Vec CountingProblem::stoch_grad_x(int agent, const Vec& x, const Vec& y, const Sample& s) const {
  {
    std::lock_guard lock(mu_);
    log_.push_back({'x', agent, s.id});
  }
  return inner_->stoch_grad_x(agent, x, y, s);
}

Vec CountingProblem::stoch_grad_y(int agent, const Vec& x, const Vec& y, const Sample& s) const {
  {
    std::lock_guard lock(mu_);
    log_.push_back({'y', agent, s.id});
  }
  return inner_->stoch_grad_y(agent, x, y, s);
}

std::vector<CountingProblem::Evaluation> CountingProblem::evaluations() const {
  std::lock_guard lock(mu_);
  return log_;
}

void CountingProblem::reset() {
  std::lock_guard lock(mu_);
  log_.clear();
  draws_ = 0;
}

}  // namespace minimax
