#include <algorithm>
#include <cmath>

#include "minimax/errors.hpp"
#include "minimax/kernels.hpp"
#include "minimax/problems.hpp"

namespace minimax {

namespace {

constexpr int kW1 = 0;
constexpr int kB1 = kHiddenUnits;
constexpr int kW2 = 2 * kHiddenUnits;
constexpr int kB2 = 3 * kHiddenUnits;

// Constant estimation: pairs in a radius-5 ball, evaluated on a prefix of the
// oracle latents.
constexpr int kLipschitzPairs = 10'000;
constexpr double kLipschitzRadius = 5.0;
constexpr double kLipschitzSafety = 2.0;
constexpr std::size_t kConstantLatents = 1000;
constexpr int kNoiseProbes = 64;
constexpr int kNoiseSamples = 2000;

Vec point_in_ball(int dim, double radius, Rng& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  return v * (r / std::max(v.norm(), 1e-300));
}

}  // namespace

double generator_output(const Vec& x, double z) {
  double g = x(kB2);
  for (int j = 0; j < kHiddenUnits; ++j) g += x(kW2 + j) * std::tanh(x(kW1 + j) * z + x(kB1 + j));
  return g;
}

double generator_output(const Vec& x, double z, Vec& grad) {
  double g = x(kB2);
  for (int j = 0; j < kHiddenUnits; ++j) {
    const double h = std::tanh(x(kW1 + j) * z + x(kB1 + j));
    const double dh = x(kW2 + j) * (1.0 - h * h);
    g += x(kW2 + j) * h;
    grad(kW1 + j) = dh * z;
    grad(kB1 + j) = dh;
    grad(kW2 + j) = h;
  }
  grad(kB2) = 1.0;
  return g;
}

Wgan1dProblem::Wgan1dProblem(WganConfig cfg, std::vector<double> weights)
    : Problem(weights.empty() ? uniform_weights(static_cast<int>(cfg.agents.size()))
                              : std::move(weights)),
      cfg_(std::move(cfg)) {
  if (!(cfg_.lambda > 0.0)) throw InvalidArgument("wgan1d needs lambda > 0");
  if (static_cast<int>(cfg_.agents.size()) != num_agents()) {
    throw InvalidArgument("wgan1d: weight count does not match the agent list");
  }
  if (cfg_.oracle_samples < 2) throw InvalidArgument("wgan1d needs at least two oracle samples");
  for (const auto& a : cfg_.agents) {
    if (a.variance < 0.0) throw InvalidArgument("wgan1d: target variance must be nonnegative");
  }
  Rng rng(cfg_.oracle_seed);
  latents_.resize(cfg_.oracle_samples);
  for (auto& z : latents_) z = rng.normal();
  for (int k = 0; k < num_agents(); ++k) {
    const auto& t = cfg_.agents[k];
    global_first_ += weights_[k] * t.mean;
    global_second_ += weights_[k] * (t.mean * t.mean + t.variance);
  }
}

Sample Wgan1dProblem::draw_sample(int agent, SampleTag, Rng& rng) const {
  const auto& t = cfg_.agents.at(agent);
  Sample s;
  s.values = {t.mean + std::sqrt(t.variance) * rng.normal(), rng.normal()};
  return s;
}

double Wgan1dProblem::regularizer(const Vec& y) const {
  return cfg_.regularizer == Regularizer::kSquared ? y.squaredNorm() : y.norm();
}

Vec Wgan1dProblem::regularizer_gradient(const Vec& y) const {
  if (cfg_.regularizer == Regularizer::kSquared) return 2.0 * y;
  const double n = y.norm();
  return n > 0.0 ? Vec(y / n) : Vec(Vec::Zero(y.size()));
}

Vec Wgan1dProblem::stoch_grad_x(int, const Vec& x, const Vec& y, const Sample& s) const {
  Vec grad(kGeneratorParams);
  const double g = generator_output(x, s.values[1], grad);
  return -(y(0) + 2.0 * y(1) * g) * grad;
}

Vec Wgan1dProblem::stoch_grad_y(int, const Vec& x, const Vec& y, const Sample& s) const {
  const double u = s.values[0];
  const double g = generator_output(x, s.values[1]);
  Vec out(2);
  out << u - g, u * u - g * g;
  return out - cfg_.lambda * regularizer_gradient(y);
}

GeneratorMoments Wgan1dProblem::moments(const Vec& x) const {
  {
    std::lock_guard lock(cache_mu_);
    if (cached_x_ && cached_x_->size() == x.size() && *cached_x_ == x) return cached_moments_;
  }
  const auto sums = kernels::generator_moments_parallel(x, latents_);
  const double n = static_cast<double>(sums.count);
  GeneratorMoments m;
  m.mean = sums.first / n;
  m.second = sums.second / n;
  m.variance = std::max(0.0, (sums.second - n * m.mean * m.mean) / (n - 1.0));
  std::lock_guard lock(cache_mu_);
  cached_x_ = x;
  cached_moments_ = m;
  return m;
}

Wgan1dProblem::GradMoments Wgan1dProblem::grad_moments(const Vec& x) const {
  {
    std::lock_guard lock(cache_mu_);
    if (cached_grad_x_ && *cached_grad_x_ == x) return cached_grad_moments_;
  }
  const auto sums = kernels::generator_grad_moments_parallel(x, latents_);
  const double n = static_cast<double>(sums.count);
  GradMoments gm{sums.first / n, sums.cross / n};
  std::lock_guard lock(cache_mu_);
  cached_grad_x_ = x;
  cached_grad_moments_ = gm;
  return gm;
}

Vec Wgan1dProblem::true_grad_x(int, const Vec& x, const Vec& y) const {
  const auto gm = grad_moments(x);
  return -(y(0) * gm.mean_grad + 2.0 * y(1) * gm.cross_grad);
}

Vec Wgan1dProblem::global_grad_x(const Vec& x, const Vec& y) const {
  // The generator term is shared by every agent.
  return true_grad_x(0, x, y);
}

Vec Wgan1dProblem::true_grad_y(int agent, const Vec& x, const Vec& y) const {
  const auto& t = cfg_.agents.at(agent);
  const auto m = moments(x);
  Vec out(2);
  out << t.mean - m.mean, t.mean * t.mean + t.variance - m.second;
  return out - cfg_.lambda * regularizer_gradient(y);
}

double Wgan1dProblem::local_value(int agent, const Vec& x, const Vec& y) const {
  const auto& t = cfg_.agents.at(agent);
  const auto m = moments(x);
  return y(0) * (t.mean - m.mean) + y(1) * (t.mean * t.mean + t.variance - m.second) -
         cfg_.lambda * regularizer(y);
}

std::optional<InnerMax> Wgan1dProblem::inner_max(const Vec& x) const {
  const auto m = moments(x);
  Vec a(2);
  a << global_first_ - m.mean, global_second_ - m.second;
  InnerMax out;
  if (cfg_.regularizer == Regularizer::kSquared) {
    out.argmax = a / (2.0 * cfg_.lambda);
    out.value = a.squaredNorm() / (4.0 * cfg_.lambda);
    return out;
  }
  // a'y - lambda |y| is unbounded above once |a| > lambda.
  if (a.norm() > cfg_.lambda) return std::nullopt;
  out.argmax = Vec::Zero(2);
  out.value = 0.0;
  return out;
}

void Wgan1dProblem::estimate_constants() const {
  const std::span<const double> sub(latents_.data(), std::min(kConstantLatents, latents_.size()));
  auto grads = [&](const Vec& x, const Vec& y, Vec& gx, Vec& gy) {
    const auto gm = kernels::generator_grad_moments_serial(x, sub);
    const auto mm = kernels::generator_moments_serial(x, sub);
    const double n = static_cast<double>(sub.size());
    gx = -(y(0) * gm.first + 2.0 * y(1) * gm.cross) / n;
    gy.resize(2);
    gy << -mm.first / n, -mm.second / n;
    gy -= cfg_.lambda * regularizer_gradient(y);
  };

  Rng rng(cfg_.oracle_seed ^ 0xC0FFEEULL);
  double ratio = 0.0;
  Vec gxa, gya, gxb, gyb;
  for (int i = 0; i < kLipschitzPairs; ++i) {
    const Vec a = point_in_ball(kGeneratorParams + 2, kLipschitzRadius, rng);
    const Vec delta = point_in_ball(kGeneratorParams + 2, 0.5, rng);
    const Vec b = a + delta;
    const Vec xa = a.head(kGeneratorParams), ya = a.tail(2);
    const Vec xb = b.head(kGeneratorParams), yb = b.tail(2);
    const double dist = (xa - xb).norm() + (ya - yb).norm();
    if (dist < 1e-12) continue;
    grads(xa, ya, gxa, gya);
    grads(xb, yb, gxb, gyb);
    ratio = std::max({ratio, (gxa - gxb).norm() / dist, (gya - gyb).norm() / dist});
  }
  constants_.lipschitz = kLipschitzSafety * ratio;

  constants_.noise.assign(num_agents(), 0.0);
  for (int probe = 0; probe < kNoiseProbes; ++probe) {
    const Vec p = point_in_ball(kGeneratorParams + 2, kLipschitzRadius, rng);
    const Vec x = p.head(kGeneratorParams), y = p.tail(2);
    for (int k = 0; k < num_agents(); ++k) {
      Vec sx = Vec::Zero(kGeneratorParams), sy = Vec::Zero(2);
      double sxx = 0.0, syy = 0.0;
      for (int s = 0; s < kNoiseSamples; ++s) {
        const Sample smp = draw_sample(k, SampleTag::kPrimal, rng);
        const Vec gx = stoch_grad_x(k, x, y, smp);
        const Vec gy = stoch_grad_y(k, x, y, smp);
        sx += gx;
        sy += gy;
        sxx += gx.squaredNorm();
        syy += gy.squaredNorm();
      }
      const double n = kNoiseSamples;
      const double vx = sxx / n - (sx / n).squaredNorm();
      const double vy = syy / n - (sy / n).squaredNorm();
      constants_.noise[k] = std::max({constants_.noise[k], vx, vy});
    }
  }

  if (cfg_.regularizer == Regularizer::kSquared) constants_.pl = 2.0 * cfg_.lambda;
  double g = 0.0;
  for (int k = 0; k < num_agents(); ++k) {
    const auto& t = cfg_.agents[k];
    const double d1 = t.mean - global_first_;
    const double d2 = t.mean * t.mean + t.variance - global_second_;
    g = std::max(g, std::hypot(d1, d2));
  }
  constants_.heterogeneity = g;
}

ProblemConstants Wgan1dProblem::constants() const {
  std::call_once(constants_once_, [this] { estimate_constants(); });
  return constants_;
}

std::shared_ptr<const Wgan1dProblem> wgan1d_problem(const WganConfig& cfg, std::vector<double> weights) {
  return std::make_shared<const Wgan1dProblem>(cfg, std::move(weights));
}

GeneratorMoments estimate_generator_moments(const Vec& x, int n_samples, Rng& rng) {
  if (n_samples < 2) throw InvalidArgument("estimate_generator_moments needs n_samples >= 2");
  if (x.size() != kGeneratorParams) throw InvalidArgument("generator weights must have 16 entries");
  std::vector<double> z(n_samples);
  for (auto& v : z) v = rng.normal();
  const auto sums = kernels::generator_moments_parallel(x, z);
  const double n = n_samples;
  GeneratorMoments m;
  m.mean = sums.first / n;
  m.second = sums.second / n;
  m.variance = std::max(0.0, (sums.second - n * m.mean * m.mean) / (n - 1.0));
  return m;
}

Vec random_generator(double scale, Rng& rng) {
  Vec x(kGeneratorParams);
  for (int i = 0; i < kGeneratorParams; ++i) x(i) = scale * rng.normal();
  return x;
}

}  // namespace minimax
