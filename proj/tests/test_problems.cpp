#include <cmath>

#include "doctest.h"
#include "minimax/errors.hpp"
#include "minimax/problem_checks.hpp"
#include "minimax/problems.hpp"

using namespace minimax;

namespace {

QuadraticConfig small_quadratic() {
  QuadraticConfig c;
  c.num_agents = 5;
  c.seed = 3;
  return c;
}

Vec randn(int n, Rng& rng, double s = 1.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = s * rng.normal();
  return v;
}

WganConfig small_wgan(int agents = 3, int oracle = 20000) {
  WganConfig c;
  for (int k = 0; k < agents; ++k) c.agents.push_back({0.1 * k, 0.01 + 0.01 * k});
  c.oracle_samples = oracle;
  return c;
}

}  // namespace

TEST_CASE("quadratic blocks are centered on the weighted averages") {
  const std::vector<double> w{0.1, 0.2, 0.3, 0.15, 0.25};
  const auto p = quadratic_pl_problem(small_quadratic(), w);
  Mat q = Mat::Zero(4, 4), b = Mat::Zero(4, 3);
  Vec c = Vec::Zero(4), d = Vec::Zero(3);
  for (int k = 0; k < 5; ++k) {
    q += w[k] * p->q(k);
    b += w[k] * p->b(k);
    c += w[k] * p->c(k);
    d += w[k] * p->d(k);
    CHECK((p->q(k) - p->q(k).transpose()).norm() < 1e-14);
  }
  CHECK((q - p->q_bar()).norm() < 1e-12);
  CHECK((b - p->b_bar()).norm() < 1e-12);
  CHECK((c - p->c_bar()).norm() < 1e-12);
  CHECK((d - p->d_bar()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(p->q_bar());
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(0.2));
  CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("quadratic gradients match finite differences exactly") {
  const auto p = quadratic_pl_problem(small_quadratic());
  Rng rng(1);
  for (int k = 0; k < p->num_agents(); ++k) {
    const Vec x = randn(4, rng), y = randn(3, rng);
    CHECK(finite_difference_check(*p, k, x, y, 1e-5) <= 1e-6);
  }
  CHECK_THROWS_AS(finite_difference_check(*p, 0, Vec::Zero(4), Vec::Zero(3), 0.0), InvalidArgument);
}

TEST_CASE("quadratic inner max and primal gradient are closed form") {
  const auto p = quadratic_pl_problem(small_quadratic());
  Rng rng(2);
  const Vec x = randn(4, rng);
  const auto im = p->inner_max(x);
  REQUIRE(im);
  CHECK(p->global_grad_y(x, im->argmax).norm() < 1e-12);
  CHECK(im->value == doctest::Approx(p->value(x, im->argmax)));
  // P(x) by finite differences.
  const double h = 1e-5;
  Vec fd(4);
  for (int i = 0; i < 4; ++i) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    fd(i) = (p->inner_max(xp)->value - p->inner_max(xm)->value) / (2 * h);
  }
  CHECK((fd - p->primal_gradient(x)).norm() < 1e-7);
  CHECK((p->global_grad_x(x, im->argmax) - p->primal_gradient(x)).norm() < 1e-12);
}

TEST_CASE("quadratic constants bound the blocks") {
  const auto p = quadratic_pl_problem(small_quadratic());
  const auto c = p->constants();
  REQUIRE(c.pl);
  CHECK(*c.pl == 1.0);
  for (int k = 0; k < p->num_agents(); ++k) {
    Eigen::JacobiSVD<Mat> sq(p->q(k)), sb(p->b(k));
    CHECK(c.lipschitz >= sq.singularValues()(0) - 1e-12);
    CHECK(c.lipschitz >= sb.singularValues()(0) - 1e-12);
  }
  CHECK(c.noise.size() == 5);
  CHECK(c.heterogeneity > 0.0);
}

TEST_CASE("quadratic stochastic gradients are unbiased with the stated variance") {
  QuadraticConfig cfg = small_quadratic();
  cfg.noise = 0.5;
  const auto p = quadratic_pl_problem(cfg);
  Rng rng(4);
  const Vec x = randn(4, rng), y = randn(3, rng);
  const auto s = monte_carlo(20000, [&](int) {
    return p->stoch_grad_x(2, x, y, p->draw_sample(2, SampleTag::kPrimal, rng));
  });
  CHECK(within_standard_errors(s, p->true_grad_x(2, x, y), 4.0));
  CHECK(s.total_variance == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("quadratic PL probe with nu = gamma") {
  QuadraticConfig cfg = small_quadratic();
  cfg.gamma = 0.7;
  const auto p = quadratic_pl_problem(cfg);
  Rng rng(5);
  const auto r = pl_probe(*p, 500, rng, [](Rng& g) {
    return std::pair{randn(4, g, 2.0), randn(3, g, 2.0)};
  });
  CHECK(r.violations == 0);
  CHECK(r.min_ratio >= 0.7 * (1 - 1e-9));
}

TEST_CASE("explicit global blocks override the random draw") {
  QuadraticConfig cfg;
  cfg.primal_dim = 2;
  cfg.dual_dim = 2;
  cfg.num_agents = 1;
  cfg.q_bar = Mat::Zero(2, 2);
  cfg.b_bar = Mat::Identity(2, 2);
  cfg.c_bar = Vec::Zero(2);
  cfg.d_bar = Vec::Zero(2);
  const auto p = quadratic_pl_problem(cfg);
  CHECK(p->b(0) == Mat::Identity(2, 2));
  Vec x(2);
  x << 1, 0;
  CHECK(p->inner_max(x)->argmax.isApprox(x));
  CHECK(p->inner_max(x)->value == doctest::Approx(0.5));
}

TEST_CASE("bilinear problem") {
  const auto p = bilinear_problem(2.0, 0.0);
  Vec x(1), y(1);
  x << 3;
  y << -1;
  Rng rng(0);
  const Sample s = p->draw_sample(0, SampleTag::kPrimal, rng);
  CHECK(p->stoch_grad_x(0, x, y, s)(0) == -2.0);
  CHECK(p->stoch_grad_y(0, x, y, s)(0) == 6.0);
  CHECK(p->value(x, y) == -6.0);
  CHECK_FALSE(p->inner_max(x));
  CHECK_FALSE(p->constants().pl);
  CHECK(p->constants().lipschitz == 2.0);
  const auto zero = bilinear_problem(0.0, 0.0);
  CHECK(zero->stoch_grad_x(0, x, y, s).norm() == 0.0);
  CHECK(finite_difference_check(*bilinear_problem(1.5, 0.0, 3), 0, Vec::Ones(3), Vec::Ones(3), 1e-5) < 1e-8);
}

TEST_CASE("generator gradient matches finite differences") {
  Rng rng(6);
  const Vec x = random_generator(0.8, rng);
  for (double z : {-1.3, 0.0, 0.4, 2.2}) {
    Vec g(kGeneratorParams);
    const double v = generator_output(x, z, g);
    CHECK(v == doctest::Approx(generator_output(x, z)));
    for (int i = 0; i < kGeneratorParams; ++i) {
      Vec xp = x, xm = x;
      xp(i) += 1e-6;
      xm(i) -= 1e-6;
      const double fd = (generator_output(xp, z) - generator_output(xm, z)) / 2e-6;
      CHECK(std::abs(fd - g(i)) < 1e-7);
    }
  }
}

TEST_CASE("wgan oracle moments agree with fresh Monte Carlo") {
  const auto p = wgan1d_problem(small_wgan(2, 200000));
  Rng rng(7);
  const Vec x = random_generator(0.7, rng);
  const GeneratorMoments m = p->moments(x);
  const int n = 200000;
  const GeneratorMoments fresh = estimate_generator_moments(x, n, rng);
  const double se = std::sqrt(m.variance * (1.0 / n + 1.0 / 200000));
  CHECK(std::abs(m.mean - fresh.mean) < 4 * se);
  CHECK(m.second == doctest::Approx(m.variance * (n - 1.0) / n + m.mean * m.mean).epsilon(1e-4));
  CHECK_THROWS_AS(estimate_generator_moments(x, 1, rng), InvalidArgument);
}

TEST_CASE("wgan gradients consistent with its values") {
  const auto p = wgan1d_problem(small_wgan());
  Rng rng(8);
  const Vec x = random_generator(0.6, rng);
  Vec y(2);
  y << 0.3, -0.2;
  CHECK(finite_difference_check(*p, 1, x, y, 1e-5, GradBlock::kDual) <= 1e-6);
  CHECK(finite_difference_check(*p, 1, x, y, 1e-5, GradBlock::kPrimal) <= 1e-5);
}

TEST_CASE("wgan stochastic gradients are unbiased") {
  const auto p = wgan1d_problem(small_wgan(2, 400000));
  Rng rng(9);
  const Vec x = random_generator(0.5, rng);
  Vec y(2);
  y << 0.4, 0.1;
  const auto sy = monte_carlo(100000, [&](int) {
    return p->stoch_grad_y(1, x, y, p->draw_sample(1, SampleTag::kDual, rng));
  });
  // The reference itself is a 4e5-draw average, so widen by its own error.
  const Vec ref = p->true_grad_y(1, x, y);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(sy.mean(i) - ref(i)) < 4 * sy.std_err(i) * std::sqrt(1.0 + 100000.0 / 400000.0));
  }
  const auto sx = monte_carlo(100000, [&](int) {
    return p->stoch_grad_x(1, x, y, p->draw_sample(1, SampleTag::kPrimal, rng));
  });
  const Vec refx = p->true_grad_x(1, x, y);
  for (int i = 0; i < kGeneratorParams; ++i) {
    CHECK(std::abs(sx.mean(i) - refx(i)) <= 4 * sx.std_err(i) * std::sqrt(1.25) + 1e-12);
  }
}

TEST_CASE("wgan inner max for the squared regularizer") {
  const auto p = wgan1d_problem(small_wgan());
  Rng rng(10);
  const Vec x = random_generator(0.5, rng);
  const auto im = p->inner_max(x);
  REQUIRE(im);
  CHECK(p->global_grad_y(x, im->argmax).norm() < 1e-10);
  CHECK(im->value == doctest::Approx(p->value(x, im->argmax)).epsilon(1e-10));
  Vec y = im->argmax;
  y(0) += 0.1;
  CHECK(p->value(x, y) < im->value);
}

TEST_CASE("wgan norm regularizer has a bounded inner max only when small") {
  WganConfig cfg = small_wgan();
  cfg.regularizer = Regularizer::kNorm;
  cfg.lambda = 100.0;
  const auto p = wgan1d_problem(cfg);
  Rng rng(11);
  const Vec x = random_generator(0.3, rng);
  const auto im = p->inner_max(x);
  REQUIRE(im);
  CHECK(im->value == doctest::Approx(0.0));
  cfg.lambda = 1e-6;
  CHECK_FALSE(wgan1d_problem(cfg)->inner_max(x));
}

TEST_CASE("wgan PL probe with nu = 2 lambda") {
  const auto p = wgan1d_problem(small_wgan(3, 5000));
  REQUIRE(p->constants().pl);
  CHECK(*p->constants().pl == doctest::Approx(0.2));
  Rng rng(12);
  const auto r = pl_probe(*p, 200, rng, [](Rng& g) {
    Vec y(2);
    y << 3 * g.normal(), 3 * g.normal();
    return std::pair{random_generator(1.0, g), y};
  });
  CHECK(r.violations == 0);
}

TEST_CASE("centralized view of one agent reproduces the agent") {
  const auto single = quadratic_pl_problem([] {
    QuadraticConfig c;
    c.num_agents = 1;
    return c;
  }());
  const CentralizedView view(single);
  Rng a(3), b(3);
  const Vec x = Vec::Ones(4), y = Vec::Ones(3);
  const Sample s1 = single->draw_sample(0, SampleTag::kPrimal, a);
  const Sample s2 = view.draw_sample(0, SampleTag::kPrimal, b);
  CHECK(single->stoch_grad_x(0, x, y, s1) == view.stoch_grad_x(0, x, y, s2));
}

TEST_CASE("centralized view gradient is the weighted sum of local gradients") {
  const std::vector<double> w{0.1, 0.2, 0.3, 0.15, 0.25};
  const auto p = quadratic_pl_problem(small_quadratic(), w);
  const CentralizedView view(p);
  Rng rng(13);
  const Vec x = randn(4, rng), y = randn(3, rng);
  Rng r1(5), r2(5);
  const Sample fused = view.draw_sample(0, SampleTag::kDual, r1);
  Vec expect = Vec::Zero(3);
  for (int k = 0; k < 5; ++k) {
    expect += w[k] * p->stoch_grad_y(k, x, y, p->draw_sample(k, SampleTag::kDual, r2));
  }
  CHECK((view.stoch_grad_y(0, x, y, fused) - expect).norm() < 1e-12);
  CHECK((view.true_grad_x(0, x, y) - p->global_grad_x(x, y)).norm() < 1e-12);
}

TEST_CASE("counting problem logs every stochastic evaluation") {
  const auto inner = bilinear_problem(1.0, 0.1);
  CountingProblem c(inner);
  Rng rng(0);
  const Sample s = c.draw_sample(0, SampleTag::kPrimal, rng);
  c.stoch_grad_x(0, Vec::Ones(1), Vec::Ones(1), s);
  c.stoch_grad_y(0, Vec::Ones(1), Vec::Ones(1), s);
  const auto log = c.evaluations();
  REQUIRE(log.size() == 2);
  CHECK(log[0].block == 'x');
  CHECK(log[1].block == 'y');
  CHECK(log[0].sample_id == s.id);
  CHECK(c.samples_drawn() == 1);
  c.reset();
  CHECK(c.evaluations().empty());
}
