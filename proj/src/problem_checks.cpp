#include "minimax/problem_checks.hpp"

#include <algorithm>
#include <cmath>

#include "minimax/errors.hpp"

namespace minimax {

double finite_difference_check(const Problem& problem, int agent, const Vec& x, const Vec& y,
                               double h, GradBlock block) {
  if (!(h > 0.0)) throw InvalidArgument("finite difference step must be positive");
  double worst = 0.0;
  auto compare = [&](double fd, double g) {
    const double denom = std::max({1.0, std::abs(g), std::abs(fd)});
    worst = std::max(worst, std::abs(fd - g) / denom);
  };
  if (block != GradBlock::kDual) {
    const Vec g = problem.true_grad_x(agent, x, y);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const double fd =
          (problem.local_value(agent, xp, y) - problem.local_value(agent, xm, y)) / (2.0 * h);
      compare(fd, g(i));
    }
  }
  if (block != GradBlock::kPrimal) {
    const Vec g = problem.true_grad_y(agent, x, y);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      Vec yp = y, ym = y;
      yp(i) += h;
      ym(i) -= h;
      const double fd =
          (problem.local_value(agent, x, yp) - problem.local_value(agent, x, ym)) / (2.0 * h);
      compare(fd, g(i));
    }
  }
  return worst;
}

PlProbeResult pl_probe(const Problem& problem, int probes, Rng& rng,
                       const std::function<std::pair<Vec, Vec>(Rng&)>& sampler, double rel_tol) {
  const auto c = problem.constants();
  if (!c.pl) throw InvalidArgument("problem declares no PL constant");
  const double nu = *c.pl;
  PlProbeResult r;
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < probes; ++i) {
    auto [x, y] = sampler(rng);
    const auto im = problem.inner_max(x);
    if (!im) throw DiagnosticError("PL probe needs an inner max");
    const double gap = im->value - problem.value(x, y);
    const double lhs = problem.global_grad_y(x, y).squaredNorm();
    const double rhs = 2.0 * nu * gap;
    ++r.probes;
    if (gap > 0.0) r.min_ratio = std::min(r.min_ratio, lhs / (2.0 * gap));
    if (lhs < rhs * (1.0 - rel_tol) - 1e-14) ++r.violations;
  }
  return r;
}

MonteCarloStats monte_carlo(int n, const std::function<Vec(int)>& draw) {
  if (n < 2) throw InvalidArgument("monte_carlo needs at least two draws");
  MonteCarloStats s;
  Vec mean, m2;
  for (int i = 0; i < n; ++i) {
    const Vec g = draw(i);
    if (i == 0) {
      mean = Vec::Zero(g.size());
      m2 = Vec::Zero(g.size());
    }
    const Vec delta = g - mean;
    mean += delta / (i + 1.0);
    m2 += delta.cwiseProduct(g - mean);
  }
  s.n = n;
  s.mean = mean;
  const Vec var = m2 / (n - 1.0);
  s.std_err = (var / n).cwiseSqrt();
  s.total_variance = var.sum();
  return s;
}

bool within_standard_errors(const MonteCarloStats& s, const Vec& target, double z) {
  if (target.size() != s.mean.size()) throw InvalidArgument("target size mismatch");
  for (Eigen::Index i = 0; i < target.size(); ++i) {
    const double err = std::abs(s.mean(i) - target(i));
    const double tol = s.std_err(i) > 0.0 ? z * s.std_err(i) : 1e-12 * std::max(1.0, std::abs(target(i)));
    if (err > tol) return false;
  }
  return true;
}

}  // namespace minimax
