#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "minimax/problem.hpp"

namespace minimax {

// ---------------------------------------------------------------------------
// Heterogeneous quadratic saddle problem
//
//   J_k(x, y) = 1/2 x'Q_k x + x'B_k y - gamma/2 |y|^2 + c_k'x + d_k'y
//
// Local perturbations are centered with the agent weights, so the weighted
// averages (Q̄, B̄, c̄, d̄) are exact. Q̄ is PSD; a single Q_k may be indefinite.
// Gradient noise is additive Gaussian with E|noise|^2 = sigma^2 per block.
// ---------------------------------------------------------------------------
struct QuadraticConfig {
  int primal_dim = 4;
  int dual_dim = 3;
  int num_agents = 8;
  double gamma = 1.0;           // dual strong concavity, also the PL constant
  double noise = 0.01;          // sigma^2
  double spread = 0.3;          // heterogeneity of Q_k, B_k
  std::optional<double> offset_spread;  // heterogeneity of c_k, d_k (defaults to spread)
  double q_min = 0.2;           // eigenvalue range of Q̄
  double q_max = 1.0;
  double coupling = 0.5;        // scale of B̄
  double offset = 1.0;          // scale of c̄, d̄
  std::uint64_t seed = 1;
  // Explicit global blocks override the random ones.
  std::optional<Mat> q_bar;
  std::optional<Mat> b_bar;
  std::optional<Vec> c_bar;
  std::optional<Vec> d_bar;
};

class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(const QuadraticConfig& cfg, std::vector<double> weights);

  std::string name() const override { return "quadratic"; }
  Dims dims() const override { return {m1_, m2_}; }
  Sample draw_sample(int agent, SampleTag tag, Rng& rng) const override;
  Vec stoch_grad_x(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec stoch_grad_y(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec true_grad_x(int agent, const Vec& x, const Vec& y) const override;
  Vec true_grad_y(int agent, const Vec& x, const Vec& y) const override;
  double local_value(int agent, const Vec& x, const Vec& y) const override;
  Vec global_grad_x(const Vec& x, const Vec& y) const override;
  Vec global_grad_y(const Vec& x, const Vec& y) const override;
  double value(const Vec& x, const Vec& y) const override;
  std::optional<InnerMax> inner_max(const Vec& x) const override;
  ProblemConstants constants() const override { return constants_; }

  // Gradient of P(x) = max_y J(x, y), closed form.
  Vec primal_gradient(const Vec& x) const;

  const Mat& q(int k) const { return q_[k]; }
  const Mat& b(int k) const { return b_[k]; }
  const Vec& c(int k) const { return c_[k]; }
  const Vec& d(int k) const { return d_[k]; }
  const Mat& q_bar() const { return q_bar_; }
  const Mat& b_bar() const { return b_bar_; }
  const Vec& c_bar() const { return c_bar_; }
  const Vec& d_bar() const { return d_bar_; }
  double gamma() const { return gamma_; }

 private:
  int m1_, m2_;
  double gamma_, noise_;
  std::vector<Mat> q_, b_;
  std::vector<Vec> c_, d_;
  Mat q_bar_, b_bar_;
  Vec c_bar_, d_bar_;
  ProblemConstants constants_;
};

std::shared_ptr<const QuadraticProblem> quadratic_pl_problem(const QuadraticConfig& cfg,
                                      std::vector<double> weights = {});

// ---------------------------------------------------------------------------
// Bilinear J(x, y) = scale * x'y, identical at every agent. Saddle at the
// origin; no PL constant and no finite inner max.
// ---------------------------------------------------------------------------
class BilinearProblem final : public Problem {
 public:
  BilinearProblem(double scale, double noise, int dim, std::vector<double> weights);

  std::string name() const override { return "bilinear"; }
  Dims dims() const override { return {dim_, dim_}; }
  Sample draw_sample(int agent, SampleTag tag, Rng& rng) const override;
  Vec stoch_grad_x(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec stoch_grad_y(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec true_grad_x(int agent, const Vec& x, const Vec& y) const override;
  Vec true_grad_y(int agent, const Vec& x, const Vec& y) const override;
  double local_value(int agent, const Vec& x, const Vec& y) const override;
  ProblemConstants constants() const override;

 private:
  double scale_, noise_;
  int dim_;
};

std::shared_ptr<const BilinearProblem> bilinear_problem(double scale, double noise, int dim = 1, int num_agents = 1);

// ---------------------------------------------------------------------------
// One-dimensional regularized WGAN
//
//   J_k(x, y) = E_u[y1 u + y2 u^2] - E_z[y1 G + y2 G^2] - lambda R(y)
//   G(x; z)   = w2' tanh(w1 z + b1) + b2,  x = (w1, b1, w2, b2) in R^16
//
// u ~ N(pi_k, sigma_k^2), z ~ N(0, 1). Generator expectations are computed by
// Monte Carlo on a fixed set of oracle draws (common random numbers), so the
// "true" gradients and values are deterministic and mutually consistent.
// ---------------------------------------------------------------------------
enum class Regularizer { kSquared, kNorm };

struct GaussianTarget {
  double mean = 0.0;
  double variance = 0.001;

  friend bool operator==(const GaussianTarget&, const GaussianTarget&) = default;
};

struct WganConfig {
  std::vector<GaussianTarget> agents;
  double lambda = 0.1;
  Regularizer regularizer = Regularizer::kSquared;
  int oracle_samples = 1'000'000;
  std::uint64_t oracle_seed = 0x5EEDULL;
};

inline constexpr int kHiddenUnits = 5;
inline constexpr int kGeneratorParams = 3 * kHiddenUnits + 1;

struct GeneratorMoments {
  double mean = 0.0;
  double second = 0.0;    // E[G^2]
  double variance = 0.0;  // unbiased sample variance
};

// G(x; z) and its parameter gradient for one latent draw.
double generator_output(const Vec& x, double z);
double generator_output(const Vec& x, double z, Vec& grad);

class Wgan1dProblem final : public Problem {
 public:
  Wgan1dProblem(WganConfig cfg, std::vector<double> weights);

  std::string name() const override { return "wgan1d"; }
  Dims dims() const override { return {kGeneratorParams, 2}; }
  Sample draw_sample(int agent, SampleTag tag, Rng& rng) const override;
  Vec stoch_grad_x(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec stoch_grad_y(int agent, const Vec& x, const Vec& y, const Sample& s) const override;
  Vec true_grad_x(int agent, const Vec& x, const Vec& y) const override;
  Vec true_grad_y(int agent, const Vec& x, const Vec& y) const override;
  double local_value(int agent, const Vec& x, const Vec& y) const override;
  Vec global_grad_x(const Vec& x, const Vec& y) const override;
  std::optional<InnerMax> inner_max(const Vec& x) const override;
  ProblemConstants constants() const override;
  bool cheap_diagnostics() const override { return false; }

  // Oracle-set moments of G(x; z), cached for the most recent x.
  GeneratorMoments moments(const Vec& x) const;
  const WganConfig& config() const { return cfg_; }
  const std::vector<double>& oracle_latents() const { return latents_; }
  Vec regularizer_gradient(const Vec& y) const;
  double regularizer(const Vec& y) const;

 private:
  struct GradMoments {
    Vec mean_grad;     // E[dG/dx]
    Vec cross_grad;    // E[G dG/dx]
  };
  GradMoments grad_moments(const Vec& x) const;
  void estimate_constants() const;

  WganConfig cfg_;
  std::vector<double> latents_;
  double global_first_ = 0.0;   // sum_k p_k pi_k
  double global_second_ = 0.0;  // sum_k p_k (pi_k^2 + sigma_k^2)

  mutable std::mutex cache_mu_;
  mutable std::optional<Vec> cached_x_;
  mutable GeneratorMoments cached_moments_;
  mutable std::optional<Vec> cached_grad_x_;
  mutable GradMoments cached_grad_moments_;
  mutable std::once_flag constants_once_;
  mutable ProblemConstants constants_;
};

std::shared_ptr<const Wgan1dProblem> wgan1d_problem(const WganConfig& cfg, std::vector<double> weights = {});

// Sample mean and unbiased variance of G(x; z) over n fresh latent draws.
GeneratorMoments estimate_generator_moments(const Vec& x, int n_samples, Rng& rng);

// Generator weights drawn i.i.d. N(0, scale^2).
Vec random_generator(double scale, Rng& rng);

}  // namespace minimax
