#include <cmath>

#include "minimax/errors.hpp"
#include "minimax/problems.hpp"

namespace minimax {

BilinearProblem::BilinearProblem(double scale, double noise, int dim, std::vector<double> weights)
    : Problem(std::move(weights)), scale_(scale), noise_(noise), dim_(dim) {
  if (dim < 1) throw InvalidArgument("bilinear dimension must be positive");
  if (noise < 0.0) throw InvalidArgument("noise must be nonnegative");
}

Sample BilinearProblem::draw_sample(int, SampleTag, Rng& rng) const {
  Sample s;
  s.values.resize(dim_);
  for (auto& v : s.values) v = rng.normal();
  return s;
}

Vec BilinearProblem::true_grad_x(int, const Vec&, const Vec& y) const { return scale_ * y; }
Vec BilinearProblem::true_grad_y(int, const Vec& x, const Vec&) const { return scale_ * x; }

Vec BilinearProblem::stoch_grad_x(int k, const Vec& x, const Vec& y, const Sample& s) const {
  Vec g = true_grad_x(k, x, y);
  if (noise_ > 0.0) g += std::sqrt(noise_ / dim_) * Eigen::Map<const Vec>(s.values.data(), dim_);
  return g;
}

Vec BilinearProblem::stoch_grad_y(int k, const Vec& x, const Vec& y, const Sample& s) const {
  Vec g = true_grad_y(k, x, y);
  if (noise_ > 0.0) g += std::sqrt(noise_ / dim_) * Eigen::Map<const Vec>(s.values.data(), dim_);
  return g;
}

double BilinearProblem::local_value(int, const Vec& x, const Vec& y) const {
  return scale_ * x.dot(y);
}

ProblemConstants BilinearProblem::constants() const {
  ProblemConstants c;
  c.lipschitz = std::abs(scale_);
  c.noise.assign(num_agents(), noise_);
  c.heterogeneity = 0.0;
  return c;
}

std::shared_ptr<const BilinearProblem> bilinear_problem(double scale, double noise, int dim,
                                                        int num_agents) {
  return std::make_shared<const BilinearProblem>(scale, noise, dim, uniform_weights(num_agents));
}

}  // namespace minimax
