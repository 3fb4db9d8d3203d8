#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "minimax/linalg.hpp"
#include "minimax/rng.hpp"

namespace minimax {

struct Dims {
  int primal = 0;  // M1
  int dual = 0;    // M2

  friend bool operator==(const Dims&, const Dims&) = default;
};

// Opaque per-problem payload. `id` identifies the draw so instrumented oracles
// can check that paired evaluations share one sample.
struct Sample {
  std::vector<double> values;
  std::uint64_t id = 0;
};

struct ProblemConstants {
  double lipschitz = 0.0;             // L_f
  std::optional<double> pl;           // nu, when -J(x, .) is declared nu-PL
  std::vector<double> noise;          // sigma_k^2 per agent
  double heterogeneity = 0.0;         // G
};

struct InnerMax {
  Vec argmax;       // y°(x)
  double value = 0; // P(x)
};

enum class SampleTag { kPrimal, kDual };

// Stochastic minimax problem min_x max_y J(x, y) = sum_k p_k J_k(x, y).
// Implementations are immutable after construction and reentrant; all
// randomness comes from the caller's Rng.
class Problem {
 public:
  explicit Problem(std::vector<double> weights);
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual Dims dims() const = 0;
  int num_agents() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }

  virtual Sample draw_sample(int agent, SampleTag tag, Rng& rng) const = 0;
  virtual Vec stoch_grad_x(int agent, const Vec& x, const Vec& y, const Sample& s) const = 0;
  virtual Vec stoch_grad_y(int agent, const Vec& x, const Vec& y, const Sample& s) const = 0;

  virtual Vec true_grad_x(int agent, const Vec& x, const Vec& y) const = 0;
  virtual Vec true_grad_y(int agent, const Vec& x, const Vec& y) const = 0;
  virtual double local_value(int agent, const Vec& x, const Vec& y) const = 0;

  virtual Vec global_grad_x(const Vec& x, const Vec& y) const;
  virtual Vec global_grad_y(const Vec& x, const Vec& y) const;
  virtual double value(const Vec& x, const Vec& y) const;

  virtual std::optional<InnerMax> inner_max(const Vec& x) const { (void)x; return std::nullopt; }
  virtual ProblemConstants constants() const = 0;

  // True when every diagnostic is closed form and cheap enough to evaluate on
  // every iteration.
  virtual bool cheap_diagnostics() const { return true; }

 protected:
  std::vector<double> weights_;
};

using ProblemPtr = std::shared_ptr<const Problem>;

std::vector<double> uniform_weights(int num_agents);

// A fusion center that sees every agent: one sample is the concatenation of
// one draw per agent (drawn sequentially from the same stream), and the
// gradient is the p-weighted sum of local stochastic gradients. With K = 1
// it reproduces the single agent exactly.
class CentralizedView final : public Problem {
 public:
  explicit CentralizedView(ProblemPtr inner);

  std::string name() const override { return "centralized(" + inner_->name() + ")"; }
  Dims dims() const override { return inner_->dims(); }
  Sample draw_sample(int agent, SampleTag tag, Rng& rng) const override;
  Vec stoch_grad_x(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec stoch_grad_y(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec true_grad_x(int agent, const Vec& x, const Vec& y) const override;
  Vec true_grad_y(int agent, const Vec& x, const Vec& y) const override;
  double local_value(int agent, const Vec& x, const Vec& y) const override;
  std::optional<InnerMax> inner_max(const Vec& x) const override { return inner_->inner_max(x); }
  ProblemConstants constants() const override;
  bool cheap_diagnostics() const override { return inner_->cheap_diagnostics(); }

  const Problem& inner() const { return *inner_; }

 private:
  std::vector<Sample> split(const Sample& s) const;
  ProblemPtr inner_;
  std::vector<std::size_t> sample_sizes_;
};

// Wraps a problem and records every stochastic-gradient evaluation.
class CountingProblem final : public Problem {
 public:
  struct Evaluation {
    char block;          // 'x' or 'y'
    int agent;
    std::uint64_t sample_id;
  };

  explicit CountingProblem(ProblemPtr inner);

  std::string name() const override { return inner_->name(); }
  Dims dims() const override { return inner_->dims(); }
  Sample draw_sample(int agent, SampleTag tag, Rng& rng) const override;
  Vec stoch_grad_x(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec stoch_grad_y(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec true_grad_x(int agent, const Vec& x, const Vec& y) const override {
    return inner_->true_grad_x(agent, x, y);
  }
  Vec true_grad_y(int agent, const Vec& x, const Vec& y) const override {
    return inner_->true_grad_y(agent, x, y);
  }
  double local_value(int agent, const Vec& x, const Vec& y) const override {
    return inner_->local_value(agent, x, y);
  }
  std::optional<InnerMax> inner_max(const Vec& x) const override { return inner_->inner_max(x); }
  ProblemConstants constants() const override { return inner_->constants(); }

  std::vector<Evaluation> evaluations() const;
  std::size_t samples_drawn() const { return draws_.load(); }
  void reset();

 private:
  ProblemPtr inner_;
  mutable std::mutex mu_;
  mutable std::vector<Evaluation> log_;
  mutable std::atomic<std::size_t> draws_{0};
  mutable std::atomic<std::uint64_t> next_id_{1};
};

}  // namespace minimax
