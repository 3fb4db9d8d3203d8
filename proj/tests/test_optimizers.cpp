#include <cmath>

#include "doctest.h"
#include "minimax/errors.hpp"
#include "minimax/optimizers.hpp"
#include "minimax/problem_checks.hpp"
#include "minimax/problems.hpp"

using namespace minimax;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }

AgentState pair(double x, double y) { return AgentState::from_pair(v1(x), v1(y)); }

double norm2(const AgentState& s) { return std::hypot(s.x(0), s.y(0)); }

NetworkState network_of(const std::vector<AgentState>& agents) {
  NetworkState n;
  n.agents = agents;
  return n;
}

std::shared_ptr<const QuadraticProblem> quadratic(int k, double noise = 0.01) {
  QuadraticConfig c;
  c.num_agents = k;
  c.noise = noise;
  return quadratic_pl_problem(c);
}

}  // namespace

TEST_CASE("algorithm names round trip") {
  for (auto a : {Algorithm::kDssOg, Algorithm::kCssOg, Algorithm::kSog, Algorithm::kSeg,
                 Algorithm::kSpeg, Algorithm::kGda, Algorithm::kAgda, Algorithm::kAdamDssOg}) {
    CHECK(algorithm_from_string(to_string(a)) == a);
  }
  CHECK_THROWS_AS(algorithm_from_string("sgd"), InvalidArgument);
}

TEST_CASE("SS-OG direction by hand on the bilinear problem") {
  const auto p = bilinear_problem(1.0, 0.0);
  Rng rng(0);
  const Sample s = p->draw_sample(0, SampleTag::kPrimal, rng);
  const Direction d = ssog_direction(*p, 0, v1(1), v1(1), v1(0), v1(0), s, s);
  CHECK(d.x(0) == 2.0);
  CHECK(d.y(0) == 2.0);
  // Coinciding history collapses to the plain gradient.
  const Direction c = ssog_direction(*p, 0, v1(0.3), v1(-2), v1(0.3), v1(-2), s, s);
  CHECK(c.x(0) == doctest::Approx(-2.0));
  CHECK(c.y(0) == doctest::Approx(0.3));
}

TEST_CASE("SS-OG evaluates each block twice on one sample") {
  auto counted = std::make_shared<const CountingProblem>(quadratic(3));
  Rng rng(1);
  const Sample sx = counted->draw_sample(1, SampleTag::kPrimal, rng);
  const Sample sy = counted->draw_sample(1, SampleTag::kDual, rng);
  ssog_direction(*counted, 1, Vec::Ones(4), Vec::Ones(3), Vec::Zero(4), Vec::Zero(3), sx, sy);
  const auto log = counted->evaluations();
  REQUIRE(log.size() == 4);
  int nx = 0, ny = 0;
  for (const auto& e : log) {
    if (e.block == 'x') {
      ++nx;
      CHECK(e.sample_id == sx.id);
    } else {
      ++ny;
      CHECK(e.sample_id == sy.id);
    }
  }
  CHECK(nx == 2);
  CHECK(ny == 2);
  CHECK(sx.id != sy.id);
}

TEST_CASE("SS-OG direction is unbiased on the quadratic problem") {
  const auto p = quadratic(4, 0.3);
  Rng rng(2);
  Vec x = Vec::Random(4), y = Vec::Random(3), xp = Vec::Random(4), yp = Vec::Random(3);
  const auto s = monte_carlo(100000, [&](int) {
    const Sample sx = p->draw_sample(2, SampleTag::kPrimal, rng);
    const Sample sy = p->draw_sample(2, SampleTag::kDual, rng);
    const Direction d = ssog_direction(*p, 2, x, y, xp, yp, sx, sy);
    Vec out(7);
    out << d.x, d.y;
    return out;
  });
  Vec target(7);
  target << 2 * p->true_grad_x(2, x, y) - p->true_grad_x(2, xp, yp),
      2 * p->true_grad_y(2, x, y) - p->true_grad_y(2, xp, yp);
  CHECK(within_standard_errors(s, target, 4.0));
}

TEST_CASE("SS-OG keeps the noise of one sample while S-OG mixes two") {
  // With additive noise the same-sample direction carries one noise draw
  // (2n - n = n); the stored past gradient of S-OG adds an independent one.
  const auto p = quadratic(1, 0.2);
  const StreamFactory f(3);
  const Vec x = Vec::Ones(4), y = Vec::Ones(3);
  const auto ss = monte_carlo(20000, [&](int i) {
    Rng r = f.stream(0, static_cast<std::uint64_t>(i), StreamTag::kGradX);
    const Sample s = p->draw_sample(0, SampleTag::kPrimal, r);
    return Vec(2 * p->stoch_grad_x(0, x, y, s) - p->stoch_grad_x(0, x, y, s));
  });
  const auto og = monte_carlo(20000, [&](int i) {
    Rng r = f.stream(0, static_cast<std::uint64_t>(i), StreamTag::kGradX);
    Rng r2 = f.stream(0, static_cast<std::uint64_t>(i), StreamTag::kGradY);
    const Sample now = p->draw_sample(0, SampleTag::kPrimal, r);
    const Sample past = p->draw_sample(0, SampleTag::kPrimal, r2);
    return Vec(2 * p->stoch_grad_x(0, x, y, now) - p->stoch_grad_x(0, x, y, past));
  });
  CHECK(ss.total_variance == doctest::Approx(0.2).epsilon(0.05));
  CHECK(og.total_variance == doctest::Approx(5 * 0.2).epsilon(0.05));
  // Recomputed minus stored past gradient: zero mean, variance 2 sigma^2.
  const auto diff = monte_carlo(20000, [&](int i) {
    Rng r = f.stream(0, static_cast<std::uint64_t>(i), StreamTag::kGradX);
    Rng r2 = f.stream(0, static_cast<std::uint64_t>(i), StreamTag::kGradY);
    const Sample now = p->draw_sample(0, SampleTag::kPrimal, r);
    const Sample past = p->draw_sample(0, SampleTag::kPrimal, r2);
    return Vec(p->stoch_grad_x(0, x, y, now) - p->stoch_grad_x(0, x, y, past));
  });
  CHECK(within_standard_errors(diff, Vec::Zero(4), 4.0));
  CHECK(diff.total_variance == doctest::Approx(2 * 0.2).epsilon(0.05));
}

TEST_CASE("one CSS-OG step by hand") {
  const auto p = bilinear_problem(1.0, 0.0);
  const StreamFactory f(0);
  const AgentState s = css_og_step(pair(1, 1), *p, {0.1, 0.1}, f, 0);
  CHECK(s.x(0) == doctest::Approx(0.9));
  CHECK(s.y(0) == doctest::Approx(1.1));
  CHECK(s.x_prev(0) == 1.0);
  CHECK(s.y_prev(0) == 1.0);
}

TEST_CASE("zero gradients leave the state unchanged") {
  const auto p = bilinear_problem(0.0, 0.0);
  const StreamFactory f(0);
  AgentState s = pair(0.7, -0.4);
  for (int i = 0; i < 10; ++i) s = css_og_step(s, *p, {0.1, 0.1}, f, i);
  CHECK(s.x(0) == 0.7);
  CHECK(s.y(0) == -0.4);
}

TEST_CASE("CSS-OG converges to the closed-form saddle") {
  QuadraticConfig c;
  c.num_agents = 1;
  c.noise = 0.0;
  const auto p = quadratic_pl_problem(c);
  // Saddle: Q̄x + B̄y + c̄ = 0, B̄'x - γy + d̄ = 0.
  Mat kkt(7, 7);
  kkt << p->q_bar(), p->b_bar(), p->b_bar().transpose(), -p->gamma() * Mat::Identity(3, 3);
  Vec rhs(7);
  rhs << -p->c_bar(), -p->d_bar();
  const Vec z = kkt.lu().solve(rhs);
  const StreamFactory f(0);
  AgentState s = AgentState::from_pair(Vec::Ones(4), Vec::Ones(3));
  double prev = 1e300;
  for (int i = 0; i < 4000; ++i) {
    s = css_og_step(s, *p, {0.05, 0.05}, f, i);
    Vec w(7);
    w << s.x, s.y;
    const double dist = (w - z).norm();
    if (i > 200) CHECK(dist <= prev * (1 + 1e-12));
    prev = dist;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("GDA spirals out while OG variants converge on the bilinear problem") {
  const auto p = bilinear_problem(1.0, 0.0);
  const StreamFactory f(0);
  AgentState g = pair(1, 1), o = pair(1, 1), s = pair(1, 1);
  double last = norm2(g);
  for (int i = 0; i < 200; ++i) {
    g = gda_step(g, *p, {0.1, 0.1}, f, i);
    CHECK(norm2(g) > last);
    last = norm2(g);
  }
  for (int i = 0; i < 2000; ++i) {
    o = sog_step(o, *p, {0.1, 0.1}, f, i);
    s = css_og_step(s, *p, {0.1, 0.1}, f, i);
  }
  CHECK(norm2(o) < 1e-3);
  CHECK(norm2(s) < 1e-3);
}

TEST_CASE("deterministic collapse of SS-OG, S-OG and GDA on coinciding history") {
  const auto p = quadratic(1, 0.0);
  const StreamFactory f(5);
  AgentState a = AgentState::from_pair(Vec::Ones(4), Vec::Ones(3));
  AgentState b = a;
  b.past_gx = p->true_grad_x(0, a.x, a.y);
  b.past_gy = p->true_grad_y(0, a.x, a.y);
  const AgentState ss = css_og_step(a, *p, {0.1, 0.2}, f, 0);
  const AgentState og = sog_step(b, *p, {0.1, 0.2}, f, 0);
  const AgentState gd = gda_step(a, *p, {0.1, 0.2}, f, 0);
  CHECK((ss.x - og.x).norm() < 1e-14);
  CHECK((ss.x - gd.x).norm() < 1e-14);
  CHECK((ss.y - og.y).norm() < 1e-14);
  CHECK((ss.y - gd.y).norm() < 1e-14);
}

TEST_CASE("S-OG reuses its stored gradient") {
  const auto p = bilinear_problem(1.0, 0.0);
  const StreamFactory f(0);
  AgentState s = pair(1, 2);
  s.past_gx = v1(10.0);
  s.past_gy = v1(-10.0);
  const AgentState n = sog_step(s, *p, {0.1, 0.1}, f, 0);
  // x - mu (2 y - 10), y + mu (2 x + 10)
  CHECK(n.x(0) == doctest::Approx(1 - 0.1 * (4 - 10)));
  CHECK(n.y(0) == doctest::Approx(2 + 0.1 * (2 + 10)));
  CHECK((*n.past_gx)(0) == 2.0);
  CHECK((*n.past_gy)(0) == 1.0);
}

TEST_CASE("S-EG extrapolates from the current point") {
  QuadraticConfig c;
  c.num_agents = 1;
  c.noise = 0.0;
  const auto p = quadratic_pl_problem(c);
  const StreamFactory f(0);
  const AgentState s = AgentState::from_pair(Vec::LinSpaced(4, -1, 1), Vec::LinSpaced(3, 0.5, 1));
  const double mx = 0.1, my = 0.2;
  const Vec xh = s.x - mx * p->true_grad_x(0, s.x, s.y);
  const Vec yh = s.y + my * p->true_grad_y(0, s.x, s.y);
  const AgentState n = seg_step(s, *p, {mx, my}, f, 0);
  CHECK((n.x - (s.x - mx * p->true_grad_x(0, xh, yh))).norm() < 1e-14);
  CHECK((n.y - (s.y + my * p->true_grad_y(0, xh, yh))).norm() < 1e-14);
}

TEST_CASE("S-PEG extrapolates with the past gradient") {
  QuadraticConfig c;
  c.num_agents = 1;
  c.noise = 0.0;
  const auto p = quadratic_pl_problem(c);
  const StreamFactory f(0);
  AgentState s = AgentState::from_pair(Vec::Ones(4), Vec::Ones(3));
  s.past_gx = Vec::Constant(4, 0.5);
  s.past_gy = Vec::Constant(3, -0.5);
  const AgentState n = speg_step(s, *p, {0.1, 0.1}, f, 0);
  const Vec xh = s.x - 0.1 * *s.past_gx;
  const Vec yh = s.y + 0.1 * *s.past_gy;
  CHECK((n.x - (s.x - 0.1 * p->true_grad_x(0, xh, yh))).norm() < 1e-14);
  CHECK((*n.past_gx - p->true_grad_x(0, xh, yh)).norm() < 1e-14);
}

TEST_CASE("AGDA uses the fresh primal iterate") {
  const auto p = bilinear_problem(1.0, 0.0);
  const StreamFactory f(0);
  const AgentState n = agda_step(pair(1, 1), *p, {0.1, 0.1}, f, 0);
  CHECK(n.x(0) == doctest::Approx(0.9));
  CHECK(n.y(0) == doctest::Approx(1.09));
}

TEST_CASE("Adam wrapper") {
  const auto p = bilinear_problem(1.0, 0.0);
  const StreamFactory f(0);
  SUBCASE("zero direction decays moments and keeps parameters") {
    const auto z = bilinear_problem(0.0, 0.0);
    AgentState s = pair(0.5, 0.5);
    s.m_x = v1(1.0);
    s.v_x = v1(1.0);
    s.m_y = v1(1.0);
    s.v_y = v1(1.0);
    s.adam_steps = 5;
    const AdamParams a{0.9, 0.99, 1e-8};
    const AgentState n = adam_ssog_step(s, *z, {0.1, 0.1}, a, f, 0);
    CHECK(n.m_x(0) == doctest::Approx(0.9));
    CHECK(n.v_x(0) == doctest::Approx(0.99));
    CHECK(n.m_y(0) == doctest::Approx(0.9));
    const double bc1 = 1 - std::pow(0.9, 6), bc2 = 1 - std::pow(0.99, 6);
    const double step = (0.9 / bc1) / (std::sqrt(0.99 / bc2) + 1e-8);
    CHECK(n.x(0) == doctest::Approx(0.5 - 0.1 * step));
  }
  SUBCASE("beta1 = beta2 = 0 normalizes the direction") {
    const AdamParams a{0.0, 0.0, 1e-8};
    const AgentState n = adam_ssog_step(pair(1, 1), *p, {0.1, 0.1}, a, f, 0);
    // direction = (1, 1): each block moves by mu * d / (|d| + eps)
    CHECK(n.x(0) == doctest::Approx(1 - 0.1 / (1 + 1e-8)));
    CHECK(n.y(0) == doctest::Approx(1 + 0.1 / (1 + 1e-8)));
  }
  SUBCASE("momentum settings") {
    CHECK_NOTHROW(validate_adam({0.2, 0.999, 1e-8}));
    CHECK_THROWS_AS(validate_adam({1.0, 0.9, 1e-8}), InvalidArgument);
    CHECK_THROWS_AS(validate_adam({0.5, -0.1, 1e-8}), InvalidArgument);
  }
}

TEST_CASE("DSS-OG with one agent equals CSS-OG bitwise") {
  const auto p = quadratic(1, 0.05);
  const StreamFactory f(77);
  const CombinationMatrix a{Mat::Ones(1, 1)};
  AgentState c = AgentState::from_pair(Vec::Ones(4), -Vec::Ones(3));
  NetworkState d = network_of({c});
  for (int i = 0; i < 300; ++i) {
    c = css_og_step(c, *p, {0.05, 0.1}, f, i);
    d = dss_og_round(d, a, *p, {0.05, 0.1}, f);
    REQUIRE((c.x.array() == d.agents[0].x.array()).all());
    REQUIRE((c.y.array() == d.agents[0].y.array()).all());
  }
}

TEST_CASE("zero-gradient rounds preserve the Perron centroid") {
  const CombinationMatrix a = averaging_rule(build_random_connected(8, 0.35, 4));
  const SpectralInfo s = perron_vector(a);
  const auto p = bilinear_problem(0.0, 0.0, 2, 8);
  NetworkState n;
  Rng rng(3);
  for (int k = 0; k < 8; ++k) {
    n.agents.push_back(AgentState::from_pair(Vec::Random(2), Vec::Random(2)));
  }
  const Vec c0 = n.primal_matrix() * s.perron;
  const StreamFactory f(1);
  for (int i = 0; i < 200; ++i) n = dss_og_round(n, a, *p, {0.1, 0.1}, f);
  CHECK((n.primal_matrix() * s.perron - c0).norm() < 1e-12);
}

TEST_CASE("serial and parallel rounds agree bitwise") {
  const auto p = quadratic(8, 0.1);
  const CombinationMatrix a = averaging_rule(build_ring(8));
  NetworkState s;
  for (int k = 0; k < 8; ++k) {
    s.agents.push_back(AgentState::from_pair(Vec::Constant(4, k), Vec::Constant(3, -k)));
  }
  NetworkState q = s;
  const StreamFactory f(9);
  for (auto algo : {Algorithm::kDssOg, Algorithm::kSeg, Algorithm::kAdamDssOg}) {
    RoundOptions os, op;
    os.algorithm = op.algorithm = algo;
    os.steps = op.steps = {0.02, 0.05};
    os.execution = Execution::kSerial;
    op.execution = Execution::kParallel;
    for (int i = 0; i < 50; ++i) {
      s = network_round(s, a, *p, os, f);
      q = network_round(q, a, *p, op, f);
    }
    CHECK((s.primal_matrix().array() == q.primal_matrix().array()).all());
    CHECK((s.dual_matrix().array() == q.dual_matrix().array()).all());
  }
}

TEST_CASE("every round opens fresh streams") {
  StreamAccountant acc;
  const StreamFactory f(2, &acc);
  const auto p = quadratic(8);
  const CombinationMatrix a = averaging_rule(build_ring(8));
  NetworkState n;
  for (int k = 0; k < 8; ++k) n.agents.push_back(AgentState::from_pair(Vec::Zero(4), Vec::Zero(3)));
  for (int i = 0; i < 20; ++i) n = dss_og_round(n, a, *p, {0.01, 0.01}, f);
  CHECK(acc.max_uses() == 1);
  CHECK(acc.distinct() == 20 * 8 * 2);
  CHECK(n.iteration == 20);
}

TEST_CASE("frozen primal rounds move only the dual block") {
  const auto p = quadratic(8);
  const CombinationMatrix a = averaging_rule(build_ring(8));
  NetworkState n;
  for (int k = 0; k < 8; ++k) {
    n.agents.push_back(AgentState::from_pair(Vec::Constant(4, 0.3), Vec::Constant(3, k)));
  }
  RoundOptions o;
  o.steps = {0.0, 0.05};
  o.freeze_primal = true;
  const StreamFactory f(0);
  const NetworkState m = network_round(n, a, *p, o, f);
  CHECK((m.primal_matrix() - n.primal_matrix()).norm() == 0.0);
  CHECK((m.dual_matrix() - n.dual_matrix()).norm() > 0.0);
  o.algorithm = Algorithm::kGda;
  CHECK_THROWS_AS(network_round(n, a, *p, o, f), InvalidArgument);
}

TEST_CASE("mismatched networks are rejected") {
  const auto p = quadratic(8);
  const CombinationMatrix a = averaging_rule(build_ring(4));
  NetworkState n;
  for (int k = 0; k < 8; ++k) n.agents.push_back(AgentState::from_pair(Vec::Zero(4), Vec::Zero(3)));
  const StreamFactory f(0);
  CHECK_THROWS_AS(dss_og_round(n, a, *p, {0.1, 0.1}, f), InvalidArgument);
  NetworkState bad = n;
  bad.agents[3].x = Vec::Zero(5);
  CHECK_THROWS_AS(dss_og_round(bad, averaging_rule(build_ring(8)), *p, {0.1, 0.1}, f),
                  InvalidArgument);
  CHECK_THROWS_AS(dss_og_round(n, averaging_rule(build_ring(8)), *p, {-0.1, 0.1}, f),
                  InvalidArgument);
}
