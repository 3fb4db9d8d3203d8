#include "minimax/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "json.hpp"

#include "minimax/errors.hpp"

namespace minimax {

namespace {

bool is_ssog_family(Algorithm a) {
  return a == Algorithm::kDssOg || a == Algorithm::kCssOg || a == Algorithm::kAdamDssOg;
}

bool recorded(long i, long n, int cadence) { return i % cadence == 0 || i == n - 1; }

double clamp_gap(double gap, double scale) {
  if (gap >= 0.0) return gap;
  if (gap >= -1e-10 * std::max(1.0, std::abs(scale))) return 0.0;
  throw DiagnosticError("negative dual gap " + std::to_string(gap));
}

std::vector<double> broadcast(const std::vector<double>& v, int n, const char* what) {
  if (static_cast<int>(v.size()) == n) return v;
  if (v.size() == 1) return std::vector<double>(static_cast<std::size_t>(n), v.front());
  throw InvalidArgument(std::string(what) + " needs 1 or K entries");
}

Vec draw_normal(int dim, double scale, Rng& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = scale * rng.normal();
  return v;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.T < 1) throw InvalidArgument("T must be at least 1");
  if (cfg.T1 < 0) throw InvalidArgument("T1 must be nonnegative");
  if (cfg.cadence < 1) throw InvalidArgument("cadence must be at least 1");
  if (cfg.n_repeats < 1) throw InvalidArgument("n_repeats must be at least 1");
  if (cfg.metric_batch < 1) throw InvalidArgument("metric_batch must be at least 1");
  const int k = cfg.topology.num_agents;
  if (k < 1) throw InvalidArgument("K must be at least 1");
  if (cfg.topology.kind == TopologyKind::kRandom &&
      !(cfg.topology.edge_prob >= 0.0 && cfg.topology.edge_prob <= 1.0)) {
    throw InvalidArgument("edge_prob must lie in [0, 1]");
  }
  if (cfg.topology.kind == TopologyKind::kExplicit) {
    if (cfg.topology.weights) {
      if (cfg.topology.weights->rows() != k || cfg.topology.weights->cols() != k) {
        throw InvalidArgument("combination matrix does not match K");
      }
    } else if (static_cast<int>(cfg.topology.neighbors.size()) != k) {
      throw InvalidArgument("neighbor lists do not match K");
    }
  }
  for (const StepSetting* s : {&cfg.algorithm.mu_x, &cfg.algorithm.mu_y}) {
    if (s->value && !(*s->value > 0.0 && std::isfinite(*s->value))) {
      throw InvalidArgument("step sizes must be positive");
    }
  }
  if (cfg.algorithm.jgamma_sq &&
      !(*cfg.algorithm.jgamma_sq >= 0.0 && *cfg.algorithm.jgamma_sq < 1.0)) {
    throw InvalidArgument("jgamma_sq must lie in [0, 1)");
  }
  if (!(cfg.algorithm.tau3_factor > 0.0)) throw InvalidArgument("tau3_factor must be positive");
  if (cfg.algorithm.algorithm == Algorithm::kAdamDssOg) validate_adam(cfg.algorithm.adam);
  if (cfg.T1 > 0 && !is_ssog_family(cfg.algorithm.algorithm)) {
    throw InvalidArgument("phase two needs an SS-OG based algorithm");
  }
  if (cfg.phase2_mu_y && !(*cfg.phase2_mu_y > 0.0)) {
    throw InvalidArgument("phase2_mu_y must be positive");
  }
  if (!(cfg.init.x_scale >= 0.0) || !(cfg.init.y_scale >= 0.0)) {
    throw InvalidArgument("init scales must be nonnegative");
  }
  if (!std::is_sorted(cfg.rate_T.begin(), cfg.rate_T.end()) ||
      std::any_of(cfg.rate_T.begin(), cfg.rate_T.end(), [](int t) { return t < 1; })) {
    throw InvalidArgument("rate_T must be ascending positive horizons");
  }
  const auto& p = cfg.problem;
  switch (p.kind) {
    case ProblemKind::kQuadratic:
      if (p.quadratic.primal_dim < 1 || p.quadratic.dual_dim < 1) {
        throw InvalidArgument("quadratic dimensions must be positive");
      }
      if (!(p.quadratic.noise >= 0.0)) throw InvalidArgument("noise must be nonnegative");
      break;
    case ProblemKind::kBilinear:
      if (p.bilinear.dim < 1) throw InvalidArgument("bilinear dim must be positive");
      if (!(p.bilinear.noise >= 0.0)) throw InvalidArgument("noise must be nonnegative");
      break;
    case ProblemKind::kWgan1d: {
      broadcast(p.wgan.pi, k, "pi");
      const auto s2 = broadcast(p.wgan.sigma2, k, "sigma2");
      if (std::any_of(s2.begin(), s2.end(), [](double v) { return !(v > 0.0); })) {
        throw InvalidArgument("sigma2 must be positive");
      }
      if (!(p.wgan.lambda > 0.0)) throw InvalidArgument("lambda must be positive");
      if (p.wgan.oracle_samples < 2) throw InvalidArgument("oracle_samples must be at least 2");
      break;
    }
  }
}

ProblemPtr make_problem(const ProblemSpec& spec, const std::vector<double>& weights) {
  const int k = static_cast<int>(weights.size());
  switch (spec.kind) {
    case ProblemKind::kQuadratic: {
      QuadraticConfig q = spec.quadratic;
      q.num_agents = k;
      return quadratic_pl_problem(q, weights);
    }
    case ProblemKind::kBilinear:
      return std::make_shared<const BilinearProblem>(spec.bilinear.scale, spec.bilinear.noise,
                                                     spec.bilinear.dim, weights);
    case ProblemKind::kWgan1d: {
      WganConfig w;
      const auto pi = broadcast(spec.wgan.pi, k, "pi");
      const auto s2 = broadcast(spec.wgan.sigma2, k, "sigma2");
      for (int i = 0; i < k; ++i) w.agents.push_back({pi[i], s2[i]});
      w.lambda = spec.wgan.lambda;
      w.regularizer = spec.wgan.regularizer;
      w.oracle_samples = spec.wgan.oracle_samples;
      w.oracle_seed = spec.wgan.oracle_seed;
      return wgan1d_problem(w, weights);
    }
  }
  throw InvalidArgument("unknown problem kind");
}

CombinationMatrix make_topology(const TopologySpec& spec) {
  switch (spec.kind) {
    case TopologyKind::kRing:
      return averaging_rule(build_ring(spec.num_agents));
    case TopologyKind::kRandom:
      return averaging_rule(build_random_connected(spec.num_agents, spec.edge_prob, spec.seed));
    case TopologyKind::kExplicit: {
      if (spec.weights) {
        CombinationMatrix a{*spec.weights};
        if (!validate_assumption6(a).ok()) {
          throw InvalidArgument("combination matrix is not primitive left-stochastic");
        }
        return a;
      }
      Graph g{spec.num_agents, spec.neighbors};
      validate_graph(g);
      return averaging_rule(g);
    }
  }
  throw InvalidArgument("unknown topology kind");
}

Setup make_setup(const ExperimentConfig& cfg) {
  validate_config(cfg);
  Setup s;
  s.a = make_topology(cfg.topology);
  if (s.a.size() != cfg.topology.num_agents) throw InvalidArgument("topology does not match K");
  s.spectral = perron_vector(s.a);
  std::vector<double> p(s.spectral.perron.data(),
                        s.spectral.perron.data() + s.spectral.perron.size());
  s.problem = make_problem(cfg.problem, p);
  if (s.problem->num_agents() != s.a.size()) {
    throw InvalidArgument("problem and topology disagree on K");
  }
  const bool central = cfg.algorithm.algorithm == Algorithm::kCssOg;
  if (central) {
    s.run_problem = std::make_shared<const CentralizedView>(s.problem);
    s.run_a = CombinationMatrix{Mat::Ones(1, 1)};
  } else {
    s.run_problem = s.problem;
    s.run_a = s.a;
  }

  const auto& alg = cfg.algorithm;
  if (alg.mu_x.planned() || alg.mu_y.planned()) {
    const ProblemConstants c = s.problem->constants();
    if (!c.pl) throw InvalidArgument("planned step sizes need a PL constant");
    const int k = central ? 1 : s.a.size();
    double jg = 0.0;
    if (!central) {
      jg = alg.jgamma_sq.value_or(s.spectral.mixing_rate * s.spectral.mixing_rate);
    }
    s.plan = plan_theorem1(c.lipschitz, *c.pl, k, jg, cfg.T, alg.tau3_factor);
  }
  s.steps.primal = alg.mu_x.value.value_or(s.plan ? s.plan->mu_x : 0.0);
  s.steps.dual = alg.mu_y.value.value_or(s.plan ? s.plan->mu_y : 0.0);
  return s;
}

NetworkState initial_state(const ExperimentConfig& cfg, const Setup& setup,
                           const StreamFactory& streams) {
  const Dims d = setup.run_problem->dims();
  const int n = setup.run_a.size();
  NetworkState state;
  state.iteration = 0;
  Vec cx, cy;
  if (cfg.init.kind == InitKind::kCommon) {
    Rng rx = streams.stream(0, 0, StreamTag::kInit);
    Rng ry = streams.stream(0, 1, StreamTag::kInit);
    cx = draw_normal(d.primal, cfg.init.x_scale, rx);
    cy = draw_normal(d.dual, cfg.init.y_scale, ry);
  }
  for (int k = 0; k < n; ++k) {
    Vec x, y;
    switch (cfg.init.kind) {
      case InitKind::kZeros:
        x = Vec::Zero(d.primal);
        y = Vec::Zero(d.dual);
        break;
      case InitKind::kConstant:
        x = Vec::Constant(d.primal, cfg.init.x_value);
        y = Vec::Constant(d.dual, cfg.init.y_value);
        break;
      case InitKind::kCommon:
        x = cx;
        y = cy;
        break;
      case InitKind::kRandom: {
        Rng rx = streams.stream(static_cast<std::uint64_t>(k), 0, StreamTag::kInit);
        Rng ry = streams.stream(static_cast<std::uint64_t>(k), 1, StreamTag::kInit);
        x = draw_normal(d.primal, cfg.init.x_scale, rx);
        y = draw_normal(d.dual, cfg.init.y_scale, ry);
        break;
      }
    }
    state.agents.push_back(AgentState::from_pair(std::move(x), std::move(y)));
  }
  return state;
}

Vec centroid(const Mat& columns, const Vec& perron) {
  if (columns.cols() != perron.size()) throw InvalidArgument("centroid: size mismatch");
  Vec c = Vec::Zero(columns.rows());
  for (Eigen::Index k = 0; k < columns.cols(); ++k) c += perron(k) * columns.col(k);
  return c;
}

TraceRecord measure(const Setup& setup, const NetworkState& state, const NetworkState* previous,
                    const StreamFactory& streams, int metric_batch) {
  const Problem& base = *setup.problem;
  const Problem& run = *setup.run_problem;
  const int n = state.size();
  const Vec perron = n == 1 ? Vec::Ones(1) : setup.spectral.perron;
  const Mat xs = state.primal_matrix();
  const Mat ys = state.dual_matrix();

  TraceRecord r;
  r.iter = static_cast<long>(state.iteration) - 1;
  r.x_c = centroid(xs, perron);
  r.y_c = centroid(ys, perron);
  r.grad_x_sq = base.global_grad_x(r.x_c, r.y_c).squaredNorm();
  r.grad_y_sq = base.global_grad_y(r.x_c, r.y_c).squaredNorm();

  if (const auto inner = base.inner_max(r.x_c)) {
    r.grad_P_sq = base.global_grad_x(r.x_c, inner->argmax).squaredNorm();
    r.dual_gap = clamp_gap(inner->value - base.value(r.x_c, r.y_c), inner->value);
  } else if (base.constants().pl) {
    try {
      r.dual_gap = dual_gap(base, r.x_c, r.y_c);
    } catch (const DiagnosticError&) {
      r.dual_gap = kNaN;
    }
  }

  double dev = 0.0;
  for (int k = 0; k < n; ++k) {
    dev += (xs.col(k) - r.x_c).squaredNorm() + (ys.col(k) - r.y_c).squaredNorm();
  }
  r.net_dev = dev;
  if (previous) {
    r.increment = (xs - previous->primal_matrix()).squaredNorm() +
                  (ys - previous->dual_matrix()).squaredNorm();
  }

  double norms = 0.0;
  for (int k = 0; k < n; ++k) {
    Rng rng = streams.stream(static_cast<std::uint64_t>(k), state.iteration, StreamTag::kMetric);
    const auto& a = state.agents[k];
    double acc = 0.0;
    for (int b = 0; b < metric_batch; ++b) {
      const Sample sx = run.draw_sample(k, SampleTag::kPrimal, rng);
      const Sample sy = run.draw_sample(k, SampleTag::kDual, rng);
      acc += run.stoch_grad_x(k, a.x, a.y, sx).norm() + run.stoch_grad_y(k, a.x, a.y, sy).norm();
    }
    norms += acc / metric_batch;
  }
  r.stoch_grad_avg = norms / n;

  if (const auto* wgan = dynamic_cast<const Wgan1dProblem*>(&base)) {
    const auto& targets = wgan->config().agents;
    const int kk = static_cast<int>(targets.size());
    double mse = 0.0;
    for (int k = 0; k < kk; ++k) {
      const Vec xk = n == kk ? Vec(xs.col(k)) : Vec(xs.col(0));
      const GeneratorMoments m = wgan->moments(xk);
      const double dm = m.mean - targets[k].mean;
      const double ds = std::sqrt(m.variance) - std::sqrt(targets[k].variance);
      mse += dm * dm + ds * ds;
    }
    r.moment_mse = mse / kk;
  }
  return r;
}

Trace run_single(const ExperimentConfig& cfg, const Setup& setup, std::uint64_t seed) {
  const StreamFactory streams(seed);
  NetworkState state = initial_state(cfg, setup, streams);
  Trace trace;
  trace.initial = measure(setup, state, nullptr, streams, cfg.metric_batch);
  trace.records.reserve(static_cast<std::size_t>(cfg.T / cfg.cadence + cfg.T1 / cfg.cadence + 2));

  RoundOptions opt;
  opt.algorithm = cfg.algorithm.algorithm;
  opt.steps = setup.steps;
  opt.adam = cfg.algorithm.adam;
  opt.execution = Execution::kParallel;

  const bool use_p = std::isfinite(trace.initial.grad_P_sq);
  double best = std::numeric_limits<double>::infinity();
  Vec best_centroid = trace.initial.x_c;
  Mat best_columns = state.primal_matrix();

  for (long i = 0; i < cfg.T; ++i) {
    NetworkState next = network_round(state, setup.run_a, *setup.run_problem, opt, streams);
    if (recorded(i, cfg.T, cfg.cadence)) {
      TraceRecord r = measure(setup, next, &state, streams, cfg.metric_batch);
      r.iter = i;
      r.phase = 1;
      const double v = use_p ? r.grad_P_sq : r.grad_x_sq;
      if (v < best) {
        best = v;
        best_centroid = r.x_c;
        best_columns = next.primal_matrix();
      }
      trace.records.push_back(std::move(r));
    }
    state = std::move(next);
  }

  if (cfg.T1 == 0) return trace;

  for (int k = 0; k < state.size(); ++k) {
    auto& a = state.agents[k];
    a.x = cfg.phase2_x == Phase2X::kCentroidBest ? best_centroid : Vec(best_columns.col(k));
    a.x_prev = a.x;
  }
  double lipschitz = 0.0, nu = 0.0;
  if (!cfg.phase2_mu_y) {
    const ProblemConstants c = setup.problem->constants();
    if (!c.pl) throw InvalidArgument("phase two schedule needs a PL constant");
    lipschitz = c.lipschitz;
    nu = *c.pl;
  }
  const int k_plan = setup.run_a.size();
  const double constant_mu =
      cfg.phase2_mu_y ? *cfg.phase2_mu_y
      : cfg.phase2_schedule == Phase2Schedule::kConstant
          ? plan_theorem2(lipschitz, nu, k_plan, cfg.T1).mu_y
          : 0.0;
  opt.freeze_primal = true;
  for (long j = 0; j < cfg.T1; ++j) {
    const bool decaying = !cfg.phase2_mu_y && cfg.phase2_schedule == Phase2Schedule::kDecaying;
    opt.steps = {0.0, decaying ? theorem2_dual_step(lipschitz, nu, k_plan, static_cast<double>(j))
                               : constant_mu};
    NetworkState next = network_round(state, setup.run_a, *setup.run_problem, opt, streams);
    if (recorded(j, cfg.T1, cfg.cadence)) {
      TraceRecord r = measure(setup, next, &state, streams, cfg.metric_batch);
      r.iter = cfg.T + j;
      r.phase = 2;
      trace.records.push_back(std::move(r));
    }
    state = std::move(next);
  }
  return trace;
}

namespace {

template <typename F>
void for_each_metric(TraceRecord& r, F&& f) {
  f(r.grad_x_sq);
  f(r.grad_y_sq);
  f(r.grad_P_sq);
  f(r.net_dev);
  f(r.increment);
  f(r.dual_gap);
  f(r.stoch_grad_avg);
  f(r.moment_mse);
}

template <typename F>
void for_each_metric_pair(TraceRecord& acc, const TraceRecord& r, F&& f) {
  f(acc.grad_x_sq, r.grad_x_sq);
  f(acc.grad_y_sq, r.grad_y_sq);
  f(acc.grad_P_sq, r.grad_P_sq);
  f(acc.net_dev, r.net_dev);
  f(acc.increment, r.increment);
  f(acc.dual_gap, r.dual_gap);
  f(acc.stoch_grad_avg, r.stoch_grad_avg);
  f(acc.moment_mse, r.moment_mse);
}

TraceRecord mean_record(const std::vector<const TraceRecord*>& rs) {
  TraceRecord out = *rs.front();
  for_each_metric(out, [](double& v) { v = 0.0; });
  out.x_c.setZero();
  out.y_c.setZero();
  for (const TraceRecord* r : rs) {
    for_each_metric_pair(out, *r, [](double& a, double b) { a += b; });
    out.x_c += r->x_c;
    out.y_c += r->y_c;
  }
  const double n = static_cast<double>(rs.size());
  for_each_metric(out, [n](double& v) { v /= n; });
  out.x_c /= n;
  out.y_c /= n;
  return out;
}

std::optional<TraceRecord> phase_mean(const Trace& t, int phase) {
  std::vector<const TraceRecord*> rs;
  for (const auto& r : t.records) {
    if (r.phase == phase) rs.push_back(&r);
  }
  if (rs.empty()) return std::nullopt;
  TraceRecord m = mean_record(rs);
  m.iter = -1;
  return m;
}

}  // namespace

Trace average_traces(const std::vector<Trace>& traces) {
  if (traces.empty()) throw InvalidArgument("no traces to average");
  if (traces.size() == 1) return traces.front();
  Trace out;
  std::vector<const TraceRecord*> col;
  for (const auto& t : traces) col.push_back(&t.initial);
  out.initial = mean_record(col);
  const std::size_t len = traces.front().records.size();
  for (const auto& t : traces) {
    if (t.records.size() != len) throw InvalidArgument("traces differ in length");
  }
  out.records.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    col.clear();
    for (const auto& t : traces) col.push_back(&t.records[i]);
    out.records.push_back(mean_record(col));
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Setup setup = make_setup(cfg);
  const StreamFactory master(cfg.seed);
  std::vector<Trace> traces(static_cast<std::size_t>(cfg.n_repeats));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (cfg.n_repeats > 1)
  for (int r = 0; r < cfg.n_repeats; ++r) {
    try {
      traces[r] = run_single(cfg, setup, master.derive(static_cast<std::uint64_t>(r)).master());
    } catch (...) {
#pragma omp critical(minimax_repeat_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult res;
  res.trace = average_traces(traces);
  auto& s = res.summary;
  s.name = cfg.name;
  s.algorithm = to_string(cfg.algorithm.algorithm);
  s.mu_x = setup.steps.primal;
  s.mu_y = setup.steps.dual;
  s.plan = setup.plan;
  s.spectral = setup.spectral;
  s.n_repeats = cfg.n_repeats;
  s.initial = res.trace.initial;
  s.final_record = res.trace.records.back();
  s.final_dual_gap = s.final_record.dual_gap;
  s.phase1_mean = *phase_mean(res.trace, 1);
  s.phase2_mean = phase_mean(res.trace, 2);
  const bool use_p = std::all_of(res.trace.records.begin(), res.trace.records.end(),
                                 [](const TraceRecord& r) {
                                   return r.phase != 1 || std::isfinite(r.grad_P_sq);
                                 });
  s.best_metric = use_p ? "grad_P_sq" : "grad_x_sq";
  const BestIterate b = best_iterate(res.trace);
  s.best_index = res.trace.records[b.index].iter;
  s.best_value = b.value;
  return res;
}

BestIterate best_iterate(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("best_iterate: empty metric");
  BestIterate b{0, values.front()};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw InvalidArgument("best_iterate: metric absent");
    if (values[i] < b.value) b = {i, values[i]};
  }
  return b;
}

BestIterate best_iterate(const Trace& trace, BestMetric metric) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    if (trace.records[i].phase == 1) idx.push_back(i);
  }
  if (idx.empty()) throw InvalidArgument("best_iterate: empty trace");
  if (metric == BestMetric::kAuto) {
    const bool have_p = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) {
      return std::isfinite(trace.records[i].grad_P_sq);
    });
    metric = have_p ? BestMetric::kGradP : BestMetric::kGradX;
  }
  std::vector<double> v;
  v.reserve(idx.size());
  for (std::size_t i : idx) {
    const auto& r = trace.records[i];
    v.push_back(metric == BestMetric::kGradP ? r.grad_P_sq : r.grad_x_sq);
  }
  const BestIterate b = best_iterate(v);
  return {idx[b.index], b.value};
}

double dual_gap(const Problem& problem, const Vec& x, const Vec& y) {
  const double j = problem.value(x, y);
  if (const auto inner = problem.inner_max(x)) return clamp_gap(inner->value - j, inner->value);
  const ProblemConstants c = problem.constants();
  if (!c.pl) throw DiagnosticError(problem.name() + ": no finite inner max");
  const double step = 1.0 / c.lipschitz;
  Vec yk = y;
  bool converged = false;
  for (int it = 0; it < 100'000; ++it) {
    const Vec g = problem.global_grad_y(x, yk);
    if (g.norm() <= 1e-9) {
      converged = true;
      break;
    }
    yk += step * g;
  }
  if (!converged) throw DiagnosticError("inner maximization did not converge");
  const double p = problem.value(x, yk);
  return clamp_gap(p - j, p);
}

std::vector<RateRow> rate_probe(const ExperimentConfig& cfg, const std::vector<int>& T_list,
                                RateMetric metric) {
  if (!std::is_sorted(T_list.begin(), T_list.end())) {
    throw InvalidArgument("rate_probe: horizons must be ascending");
  }
  if (metric == RateMetric::kAuto) {
    metric = cfg.T1 > 0 ? RateMetric::kFinalDualGap : RateMetric::kAveragedGradP;
  }
  std::vector<RateRow> rows;
  for (int t : T_list) {
    ExperimentConfig c = cfg;
    if (metric == RateMetric::kFinalDualGap) {
      c.T1 = t;
    } else {
      c.T = t;
      c.T1 = 0;
    }
    const ExperimentResult res = run_experiment(c);
    const double v = metric == RateMetric::kFinalDualGap ? res.summary.final_dual_gap
                                                         : res.summary.phase1_mean.grad_P_sq;
    rows.push_back({t, v});
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json record_json(const TraceRecord& r, bool with_centroid) {
  nlohmann::json j;
  j["grad_x_sq"] = num(r.grad_x_sq);
  j["grad_y_sq"] = num(r.grad_y_sq);
  j["grad_P_sq"] = num(r.grad_P_sq);
  j["net_dev"] = num(r.net_dev);
  j["increment"] = num(r.increment);
  j["dual_gap"] = num(r.dual_gap);
  j["stoch_grad_avg"] = num(r.stoch_grad_avg);
  j["moment_mse"] = num(r.moment_mse);
  if (with_centroid) {
    j["iter"] = r.iter;
    j["x_c"] = std::vector<double>(r.x_c.data(), r.x_c.data() + r.x_c.size());
    j["y_c"] = std::vector<double>(r.y_c.data(), r.y_c.data() + r.y_c.size());
  }
  return j;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.iter << ',' << fmt(r.grad_x_sq) << ',' << fmt(r.grad_y_sq) << ','
        << fmt(r.grad_P_sq) << ',' << fmt(r.net_dev) << ',' << fmt(r.increment) << ','
        << fmt(r.dual_gap) << ',' << fmt(r.stoch_grad_avg) << ',' << fmt(r.moment_mse) << ','
        << r.phase << '\n';
  }
}

std::string summary_json(const ExperimentSummary& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["algorithm"] = s.algorithm;
  j["mu_x"] = s.mu_x;
  j["mu_y"] = s.mu_y;
  if (s.plan) {
    j["plan"] = {{"mu_x", s.plan->mu_x}, {"mu_y", s.plan->mu_y}, {"L", s.plan->L},
                 {"tau1", s.plan->tau1}, {"tau3", s.plan->tau3}, {"beta1", s.plan->beta1},
                 {"phase", to_string(s.plan->phase)}};
  }
  j["spectral"] = {{"mixing_rate", s.spectral.mixing_rate},
                   {"condition", s.spectral.condition},
                   {"rho2_estimate", s.spectral.rho2_estimate},
                   {"perron", std::vector<double>(s.spectral.perron.data(),
                                                  s.spectral.perron.data() +
                                                      s.spectral.perron.size())}};
  j["n_repeats"] = s.n_repeats;
  j["best_metric"] = s.best_metric;
  j["best_index"] = s.best_index;
  j["best_value"] = num(s.best_value);
  j["final_dual_gap"] = num(s.final_dual_gap);
  j["initial"] = record_json(s.initial, false);
  j["final"] = record_json(s.final_record, true);
  j["phase1_mean"] = record_json(s.phase1_mean, false);
  if (s.phase2_mean) j["phase2_mean"] = record_json(*s.phase2_mean, false);
  return j.dump(2);
}

}  // namespace minimax
