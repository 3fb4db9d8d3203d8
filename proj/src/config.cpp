#include "minimax/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "minimax/errors.hpp"

namespace minimax {

namespace {

// Strict view of one JSON object: every key must be consumed.
class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& raw(const std::string& key) {
    if (!has(key)) throw ConfigError(where_ + ": missing key '" + key + "'");
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) {
    return has(key) ? as_number(raw(key), key) : fallback;
  }
  double number(const std::string& key) { return as_number(raw(key), key); }

  long integer(const std::string& key, long fallback) {
    return has(key) ? as_integer(raw(key), key) : fallback;
  }
  long integer(const std::string& key) { return as_integer(raw(key), key); }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError(path(key) + ": expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? as_string(raw(key), key) : fallback;
  }
  std::string string(const std::string& key) { return as_string(raw(key), key); }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
    }
  }

  double as_number(const Json& v, const std::string& key) const {
    if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
    return v.get<double>();
  }

  long as_integer(const Json& v, const std::string& key) const {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long>(d);
    }
    throw ConfigError(path(key) + ": expected an integer");
  }

  std::string as_string(const Json& v, const std::string& key) const {
    if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
    return v.get<std::string>();
  }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> used_;
};

template <typename E>
struct Named {
  E value;
  const char* name;
};

template <typename E, std::size_t N>
E parse_enum(const Named<E> (&table)[N], const std::string& s, const std::string& what) {
  for (const auto& n : table) {
    if (s == n.name) return n.value;
  }
  throw ConfigError(what + ": unknown value '" + s + "'");
}

template <typename E, std::size_t N>
std::string enum_name(const Named<E> (&table)[N], E v) {
  for (const auto& n : table) {
    if (v == n.value) return n.name;
  }
  throw ConfigError("unnamed enum value");
}

constexpr Named<ProblemKind> kProblemKinds[] = {{ProblemKind::kQuadratic, "quadratic"},
                                                {ProblemKind::kBilinear, "bilinear"},
                                                {ProblemKind::kWgan1d, "wgan1d"}};
constexpr Named<TopologyKind> kTopologyKinds[] = {{TopologyKind::kRing, "ring"},
                                                  {TopologyKind::kRandom, "random"},
                                                  {TopologyKind::kExplicit, "explicit"}};
constexpr Named<InitKind> kInitKinds[] = {{InitKind::kRandom, "random"},
                                          {InitKind::kZeros, "zeros"},
                                          {InitKind::kCommon, "common"},
                                          {InitKind::kConstant, "constant"}};
constexpr Named<Phase2X> kPhase2X[] = {{Phase2X::kCentroidBest, "centroid_best"},
                                       {Phase2X::kPerAgentFrozen, "per_agent_frozen"}};
constexpr Named<Phase2Schedule> kPhase2Schedules[] = {
    {Phase2Schedule::kDecaying, "decaying"}, {Phase2Schedule::kConstant, "constant"}};
constexpr Named<Regularizer> kRegularizers[] = {{Regularizer::kSquared, "squared"},
                                                {Regularizer::kNorm, "norm"}};

Algorithm parse_algorithm(const std::string& s) {
  try {
    return algorithm_from_string(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

Mat parse_rows(const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty() || !v.front().is_array()) {
    throw ConfigError(where + ": expected a nonempty array of rows");
  }
  const std::size_t cols = v.front().size();
  Mat m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (!v[r].is_array() || v[r].size() != cols) throw ConfigError(where + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!v[r][c].is_number()) throw ConfigError(where + ": expected numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[r][c].get<double>();
    }
  }
  return m;
}

Json rows_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Vec parse_vec(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(where + ": expected numbers");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

Json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::vector<double> parse_scalar_or_list(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>()};
  const Vec x = parse_vec(v, where);
  if (x.size() == 0) throw ConfigError(where + ": empty list");
  return std::vector<double>(x.data(), x.data() + x.size());
}

Json scalar_or_list_json(const std::vector<double>& v) {
  if (v.size() == 1) return v.front();
  return v;
}

StepSetting parse_step(const Json& v, const std::string& where) {
  if (v.is_string()) {
    if (v.get<std::string>() != "theorem1") throw ConfigError(where + ": expected a number or \"theorem1\"");
    return StepSetting{std::nullopt};
  }
  if (!v.is_number()) throw ConfigError(where + ": expected a number or \"theorem1\"");
  return StepSetting{v.get<double>()};
}

Json step_json(const StepSetting& s) {
  if (s.planned()) return "theorem1";
  return *s.value;
}

ProblemSpec parse_problem(const Json& j, int num_agents) {
  Reader r(j, "problem");
  ProblemSpec p;
  p.kind = parse_enum(kProblemKinds, r.string("type"), "problem.type");
  switch (p.kind) {
    case ProblemKind::kQuadratic: {
      QuadraticConfig& q = p.quadratic;
      q.primal_dim = static_cast<int>(r.integer("primal_dim", q.primal_dim));
      q.dual_dim = static_cast<int>(r.integer("dual_dim", q.dual_dim));
      q.gamma = r.number("gamma", q.gamma);
      q.noise = r.number("noise", q.noise);
      q.spread = r.number("spread", q.spread);
      if (r.has("offset_spread")) q.offset_spread = r.number("offset_spread");
      q.q_min = r.number("q_min", q.q_min);
      q.q_max = r.number("q_max", q.q_max);
      q.coupling = r.number("coupling", q.coupling);
      q.offset = r.number("offset", q.offset);
      q.seed = r.unsigned_integer("seed", q.seed);
      if (r.has("q_bar")) q.q_bar = parse_rows(r.raw("q_bar"), "problem.q_bar");
      if (r.has("b_bar")) q.b_bar = parse_rows(r.raw("b_bar"), "problem.b_bar");
      if (r.has("c_bar")) q.c_bar = parse_vec(r.raw("c_bar"), "problem.c_bar");
      if (r.has("d_bar")) q.d_bar = parse_vec(r.raw("d_bar"), "problem.d_bar");
      break;
    }
    case ProblemKind::kBilinear:
      p.bilinear.scale = r.number("scale", p.bilinear.scale);
      p.bilinear.noise = r.number("noise", p.bilinear.noise);
      p.bilinear.dim = static_cast<int>(r.integer("dim", p.bilinear.dim));
      break;
    case ProblemKind::kWgan1d: {
      WganSpec& w = p.wgan;
      if (r.has("pi")) w.pi = parse_scalar_or_list(r.raw("pi"), "problem.pi");
      if (r.has("sigma2")) w.sigma2 = parse_scalar_or_list(r.raw("sigma2"), "problem.sigma2");
      w.lambda = r.number("lambda", w.lambda);
      w.regularizer =
          parse_enum(kRegularizers, r.string("regularizer", "squared"), "problem.regularizer");
      w.oracle_samples = static_cast<int>(r.integer("oracle_samples", w.oracle_samples));
      w.oracle_seed = r.unsigned_integer("oracle_seed", w.oracle_seed);
      if (r.has("K") && r.integer("K") != num_agents) {
        throw ConfigError("problem.K does not match topology.K");
      }
      break;
    }
  }
  r.finish();
  return p;
}

Json problem_json(const ProblemSpec& p, int num_agents) {
  Json j;
  j["type"] = enum_name(kProblemKinds, p.kind);
  switch (p.kind) {
    case ProblemKind::kQuadratic: {
      const QuadraticConfig& q = p.quadratic;
      j["primal_dim"] = q.primal_dim;
      j["dual_dim"] = q.dual_dim;
      j["gamma"] = q.gamma;
      j["noise"] = q.noise;
      j["spread"] = q.spread;
      if (q.offset_spread) j["offset_spread"] = *q.offset_spread;
      j["q_min"] = q.q_min;
      j["q_max"] = q.q_max;
      j["coupling"] = q.coupling;
      j["offset"] = q.offset;
      j["seed"] = q.seed;
      if (q.q_bar) j["q_bar"] = rows_json(*q.q_bar);
      if (q.b_bar) j["b_bar"] = rows_json(*q.b_bar);
      if (q.c_bar) j["c_bar"] = vec_json(*q.c_bar);
      if (q.d_bar) j["d_bar"] = vec_json(*q.d_bar);
      break;
    }
    case ProblemKind::kBilinear:
      j["scale"] = p.bilinear.scale;
      j["noise"] = p.bilinear.noise;
      j["dim"] = p.bilinear.dim;
      break;
    case ProblemKind::kWgan1d:
      j["pi"] = scalar_or_list_json(p.wgan.pi);
      j["sigma2"] = scalar_or_list_json(p.wgan.sigma2);
      j["lambda"] = p.wgan.lambda;
      j["K"] = num_agents;
      j["regularizer"] = enum_name(kRegularizers, p.wgan.regularizer);
      j["oracle_samples"] = p.wgan.oracle_samples;
      j["oracle_seed"] = p.wgan.oracle_seed;
      break;
  }
  return j;
}

TopologySpec parse_topology(Reader& r) {
  TopologySpec t;
  const bool explicit_doc = !r.has("type");
  t.kind = explicit_doc ? TopologyKind::kExplicit
                        : parse_enum(kTopologyKinds, r.string("type"), "topology.type");
  if (r.has("K")) t.num_agents = static_cast<int>(r.integer("K"));
  if (t.kind == TopologyKind::kRandom) {
    t.edge_prob = r.number("edge_prob", t.edge_prob);
    t.seed = r.unsigned_integer("seed", t.seed);
  }
  if (t.kind == TopologyKind::kExplicit) {
    if (r.has("neighbors")) {
      const Json& v = r.raw("neighbors");
      if (!v.is_array()) throw ConfigError("topology.neighbors: expected an array of lists");
      for (const auto& row : v) {
        if (!row.is_array()) throw ConfigError("topology.neighbors: expected an array of lists");
        std::vector<int> n;
        for (const auto& e : row) {
          if (!e.is_number_integer()) throw ConfigError("topology.neighbors: expected integers");
          n.push_back(e.get<int>());
        }
        t.neighbors.push_back(std::move(n));
      }
      if (!r.has("K")) t.num_agents = static_cast<int>(t.neighbors.size());
    }
    if (r.has("A")) {
      const Json& v = r.raw("A");
      if (!v.is_array()) throw ConfigError("topology.A: expected an array");
      std::vector<double> flat;
      for (const auto& e : v) {
        if (e.is_array()) {
          for (const auto& x : e) {
            if (!x.is_number()) throw ConfigError("topology.A: expected numbers");
            flat.push_back(x.get<double>());
          }
        } else if (e.is_number()) {
          flat.push_back(e.get<double>());
        } else {
          throw ConfigError("topology.A: expected numbers");
        }
      }
      const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
      if (k * k != static_cast<int>(flat.size()) || k == 0) {
        throw ConfigError("topology.A: expected K*K entries");
      }
      if (!r.has("K") && t.neighbors.empty()) t.num_agents = k;
      if (k != t.num_agents) throw ConfigError("topology.A does not match K");
      t.weights = Eigen::Map<const Mat>(flat.data(), k, k);
    }
    if (!t.weights && t.neighbors.empty()) {
      throw ConfigError("topology: explicit graphs need neighbors or A");
    }
  }
  if (t.num_agents < 1) throw ConfigError("topology.K must be positive");
  return t;
}

Json topology_body(const TopologySpec& t) {
  Json j;
  j["K"] = t.num_agents;
  if (t.kind == TopologyKind::kRandom) {
    j["edge_prob"] = t.edge_prob;
    j["seed"] = t.seed;
  }
  if (t.kind == TopologyKind::kExplicit) {
    if (!t.neighbors.empty()) j["neighbors"] = t.neighbors;
    if (t.weights) {
      j["A"] = std::vector<double>(t.weights->data(), t.weights->data() + t.weights->size());
    }
  }
  return j;
}

}  // namespace

TopologySpec topology_from_json(const Json& j) {
  Reader r(j, "topology");
  TopologySpec t = parse_topology(r);
  r.finish();
  return t;
}

Json topology_to_json(const TopologySpec& spec) {
  Json j = topology_body(spec);
  j["type"] = enum_name(kTopologyKinds, spec.kind);
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  Reader r(j, "config");
  ExperimentConfig c;
  c.name = r.string("name", c.name);
  c.topology = topology_from_json(r.raw("topology"));
  c.problem = parse_problem(r.raw("problem"), c.topology.num_agents);

  AlgorithmSpec& a = c.algorithm;
  a.algorithm = parse_algorithm(r.string("algo", "dss-og"));
  if (r.has("mu_x")) a.mu_x = parse_step(r.raw("mu_x"), "config.mu_x");
  if (r.has("mu_y")) a.mu_y = parse_step(r.raw("mu_y"), "config.mu_y");
  if (r.has("adam")) {
    Reader ar(r.raw("adam"), "adam");
    a.adam.beta1 = ar.number("beta1", a.adam.beta1);
    a.adam.beta2 = ar.number("beta2", a.adam.beta2);
    a.adam.eps = ar.number("eps", a.adam.eps);
    ar.finish();
  }
  a.tau3_factor = r.number("tau3_factor", a.tau3_factor);
  if (r.has("jgamma_sq")) a.jgamma_sq = r.number("jgamma_sq");

  if (r.has("init")) {
    Reader ir(r.raw("init"), "init");
    c.init.kind = parse_enum(kInitKinds, ir.string("type", "random"), "init.type");
    c.init.x_scale = ir.number("x_scale", c.init.x_scale);
    c.init.y_scale = ir.number("y_scale", c.init.y_scale);
    c.init.x_value = ir.number("x_value", c.init.x_value);
    c.init.y_value = ir.number("y_value", c.init.y_value);
    ir.finish();
  }

  c.T = static_cast<int>(r.integer("T", c.T));
  c.T1 = static_cast<int>(r.integer("T1", c.T1));
  c.seed = r.unsigned_integer("seed", c.seed);
  c.cadence = static_cast<int>(r.integer("cadence", c.cadence));
  c.n_repeats = static_cast<int>(r.integer("n_repeats", c.n_repeats));
  c.metric_batch = static_cast<int>(r.integer("metric_batch", c.metric_batch));
  c.phase2_x = parse_enum(kPhase2X, r.string("phase2_x", "centroid_best"), "phase2_x");
  c.phase2_schedule =
      parse_enum(kPhase2Schedules, r.string("phase2_schedule", "decaying"), "phase2_schedule");
  if (r.has("phase2_mu_y")) c.phase2_mu_y = r.number("phase2_mu_y");
  if (r.has("compare")) {
    const Json& v = r.raw("compare");
    if (!v.is_array()) throw ConfigError("config.compare: expected an array of names");
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError("config.compare: expected an array of names");
      c.compare.push_back(parse_algorithm(e.get<std::string>()));
    }
  }
  if (r.has("rate_T")) {
    const Json& v = r.raw("rate_T");
    if (!v.is_array()) throw ConfigError("config.rate_T: expected an array of integers");
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError("config.rate_T: expected integers");
      c.rate_T.push_back(e.get<int>());
    }
  }
  r.finish();
  try {
    validate_config(c);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  j["problem"] = problem_json(c.problem, c.topology.num_agents);
  j["topology"] = topology_to_json(c.topology);
  j["algo"] = to_string(c.algorithm.algorithm);
  j["mu_x"] = step_json(c.algorithm.mu_x);
  j["mu_y"] = step_json(c.algorithm.mu_y);
  j["adam"] = {{"beta1", c.algorithm.adam.beta1},
               {"beta2", c.algorithm.adam.beta2},
               {"eps", c.algorithm.adam.eps}};
  j["tau3_factor"] = c.algorithm.tau3_factor;
  if (c.algorithm.jgamma_sq) j["jgamma_sq"] = *c.algorithm.jgamma_sq;
  j["init"] = {{"type", enum_name(kInitKinds, c.init.kind)},
               {"x_scale", c.init.x_scale},
               {"y_scale", c.init.y_scale},
               {"x_value", c.init.x_value},
               {"y_value", c.init.y_value}};
  j["T"] = c.T;
  j["T1"] = c.T1;
  j["seed"] = c.seed;
  j["cadence"] = c.cadence;
  j["n_repeats"] = c.n_repeats;
  j["metric_batch"] = c.metric_batch;
  j["phase2_x"] = enum_name(kPhase2X, c.phase2_x);
  j["phase2_schedule"] = enum_name(kPhase2Schedules, c.phase2_schedule);
  if (c.phase2_mu_y) j["phase2_mu_y"] = *c.phase2_mu_y;
  if (!c.compare.empty()) {
    Json names = Json::array();
    for (Algorithm a : c.compare) names.push_back(to_string(a));
    j["compare"] = names;
  }
  if (!c.rate_T.empty()) j["rate_T"] = c.rate_T;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j);
}

Json assumption6_json(const Assumption6Report& report, const SpectralInfo* spectral) {
  Json j;
  j["ok"] = report.ok();
  j["columns_sum_to_one"] = report.columns_sum_to_one;
  j["max_column_error"] = report.max_column_error;
  j["nonnegative"] = report.nonnegative;
  j["strongly_connected"] = report.strongly_connected;
  j["primitive"] = report.primitive;
  if (spectral) {
    j["perron"] = vec_json(spectral->perron);
    j["mixing_rate"] = spectral->mixing_rate;
    j["condition"] = spectral->condition;
    j["rho2_estimate"] = spectral->rho2_estimate;
  }
  return j;
}

StepPlan plan_from_json(int theorem, const Json& params) {
  Reader r(params, "params");
  auto pick = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (r.has(k)) return r.number(k);
    }
    throw ConfigError(std::string("params: missing ") + *keys.begin());
  };
  const double lf = pick({"L_f", "Lf"});
  const double nu = pick({"nu", "ν"});
  const long k = r.integer("K");
  const double t = r.number("T");
  StepPlan plan;
  try {
    if (theorem == 1) {
      const double jg = r.number("jgamma_sq", 0.0);
      const double tau3 = r.number("tau3_factor", kDefaultTau3Factor);
      plan = plan_theorem1(lf, nu, static_cast<int>(k), jg, t, tau3);
    } else if (theorem == 2) {
      plan = plan_theorem2(lf, nu, static_cast<int>(k), t);
    } else {
      throw ConfigError("theorem must be 1 or 2");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  r.finish();
  return plan;
}

Json plan_to_json(const StepPlan& p) {
  return {{"mu_x", p.mu_x}, {"mu_y", p.mu_y}, {"L", p.L},         {"tau1", p.tau1},
          {"tau3", p.tau3}, {"beta1", p.beta1}, {"phase", to_string(p.phase)}};
}

std::vector<std::string> preset_names() {
  return {"wgan1d-lowvar",     "wgan1d-highvar",    "quadratic-ring8",
          "bilinear-contrast", "rate-probe-primal", "rate-probe-dual"};
}

namespace {

ExperimentConfig wgan_preset(const std::string& name, double sigma2) {
  ExperimentConfig c;
  c.name = name;
  c.problem.kind = ProblemKind::kWgan1d;
  c.problem.wgan.pi = {0.0};
  c.problem.wgan.sigma2 = {sigma2};
  c.problem.wgan.lambda = 0.1;
  c.problem.wgan.oracle_samples = 100'000;
  c.topology.kind = TopologyKind::kRing;
  c.topology.num_agents = 8;
  c.algorithm.algorithm = Algorithm::kDssOg;
  c.algorithm.mu_x = {0.1};
  c.algorithm.mu_y = {0.1};
  c.init.kind = InitKind::kRandom;
  c.init.x_scale = 1.0;
  c.init.y_scale = 0.05;
  c.T = 10'000;
  c.cadence = 100;
  c.metric_batch = 16;
  return c;
}

ExperimentConfig quadratic_base(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.problem.kind = ProblemKind::kQuadratic;
  c.topology.kind = TopologyKind::kRing;
  c.topology.num_agents = 8;
  c.algorithm.algorithm = Algorithm::kDssOg;
  return c;
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
  if (name == "wgan1d-lowvar") return wgan_preset(name, 0.001);
  if (name == "wgan1d-highvar") return wgan_preset(name, 0.1);
  if (name == "quadratic-ring8") {
    ExperimentConfig c = quadratic_base(name);
    c.algorithm.mu_x = {0.02};
    c.algorithm.mu_y = {0.1};
    c.T = 5000;
    c.T1 = 1000;
    c.n_repeats = 10;
    c.cadence = 10;
    return c;
  }
  if (name == "bilinear-contrast") {
    ExperimentConfig c;
    c.name = name;
    c.problem.kind = ProblemKind::kBilinear;
    c.topology.kind = TopologyKind::kRing;
    c.topology.num_agents = 1;
    c.algorithm.algorithm = Algorithm::kCssOg;
    c.algorithm.mu_x = {0.1};
    c.algorithm.mu_y = {0.1};
    c.init.kind = InitKind::kConstant;
    c.T = 500;
    c.cadence = 1;
    c.compare = {Algorithm::kGda, Algorithm::kAgda, Algorithm::kSog, Algorithm::kSeg,
                 Algorithm::kSpeg};
    return c;
  }
  if (name == "rate-probe-primal") {
    ExperimentConfig c = quadratic_base(name);
    c.algorithm.mu_x = {};
    c.algorithm.mu_y = {};
    c.T = 2000;
    c.cadence = 1;
    c.n_repeats = 20;
    c.rate_T = {2000, 8000};
    return c;
  }
  if (name == "rate-probe-dual") {
    ExperimentConfig c = quadratic_base(name);
    // More dual coordinates average out the per-seed spread of the gap.
    c.problem.quadratic.dual_dim = 16;
    c.algorithm.mu_x = {0.02};
    c.algorithm.mu_y = {0.1};
    c.T = 100;
    c.T1 = 1000;
    c.cadence = 10;
    c.n_repeats = 20;
    c.rate_T = {1000, 2000};
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace minimax
