#include "cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "minimax/config.hpp"
#include "minimax/errors.hpp"
#include "minimax/simulator.hpp"

namespace minimax::cli {

namespace fs = std::filesystem;

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void write_run(const fs::path& dir, const std::string& suffix, const ExperimentResult& res) {
  std::ofstream csv(dir / ("trace" + suffix + ".csv"), std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write into " + dir.string());
  write_trace_csv(csv, res.trace);
  write_file(dir / ("summary" + suffix + ".json"), summary_json(res.summary) + "\n");
}

std::string number(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

int cmd_run(const std::string& config_path, const std::string& preset_name,
            const std::optional<std::uint64_t>& seed, std::string out_dir, std::ostream& out) {
  ExperimentConfig cfg = preset_name.empty() ? load_config(config_path) : preset(preset_name);
  if (seed) cfg.seed = *seed;
  if (const char* env = std::getenv("MINIMAX_OUT"); env && *env) out_dir = env;

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / "config.json", config_to_json(cfg).dump(2) + "\n");

  const ExperimentResult res = run_experiment(cfg);
  write_run(dir, "", res);
  out << cfg.name << " [" << res.summary.algorithm << "]: best " << res.summary.best_metric
      << " = " << number(res.summary.best_value) << " at iteration " << res.summary.best_index
      << ", final dual gap " << number(res.summary.final_dual_gap) << "\n";

  for (Algorithm a : cfg.compare) {
    ExperimentConfig c = cfg;
    c.algorithm.algorithm = a;
    // Baselines have no dual-only refinement; they run phase one only.
    const bool same_sample =
        a == Algorithm::kDssOg || a == Algorithm::kCssOg || a == Algorithm::kAdamDssOg;
    if (!same_sample) c.T1 = 0;
    const ExperimentResult r = run_experiment(c);
    write_run(dir, "_" + to_string(a), r);
    const double norm0 =
        std::sqrt(r.trace.initial.x_c.squaredNorm() + r.trace.initial.y_c.squaredNorm());
    const auto& last = r.trace.records.back();
    const double norm1 = std::sqrt(last.x_c.squaredNorm() + last.y_c.squaredNorm());
    out << "  " << to_string(a) << ": |(x,y)| " << number(norm0) << " -> " << number(norm1)
        << "\n";
  }

  if (!cfg.rate_T.empty()) {
    const auto rows = rate_probe(cfg, cfg.rate_T);
    std::ofstream rate(dir / "rate.csv", std::ios::binary);
    rate << "T,value\n";
    for (const auto& row : rows) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%d,%.17g\n", row.T, row.value);
      rate << buf;
      out << "  T=" << row.T << ": " << number(row.value) << "\n";
    }
  }
  out << "wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_plan(int theorem, const std::string& params, std::ostream& out) {
  const StepPlan plan = plan_from_json(theorem, read_json(params));
  out << plan_to_json(plan).dump(2) << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const TopologySpec spec = topology_from_json(read_json(path));
  CombinationMatrix a;
  if (spec.weights) {
    a = CombinationMatrix{*spec.weights};
  } else {
    try {
      a = averaging_rule(Graph{spec.num_agents, spec.neighbors});
    } catch (const InvalidArgument& e) {
      Json j{{"ok", false}, {"error", e.what()}};
      out << j.dump(2) << "\n";
      return kExitRuntime;
    }
  }
  const Assumption6Report report = validate_assumption6(a);
  if (!report.ok()) {
    out << assumption6_json(report, nullptr).dump(2) << "\n";
    return kExitRuntime;
  }
  const SpectralInfo spectral = perron_vector(a);
  out << assumption6_json(report, &spectral).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed stochastic minimax simulator", "minimax"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config file or preset");
  std::string config_path, preset_name, out_dir = "./out";
  std::optional<std::uint64_t> seed;
  auto* config_opt = run_cmd->add_option("--config", config_path, "Experiment config (JSON)");
  auto* preset_opt = run_cmd->add_option("--preset", preset_name, "Bundled preset name");
  config_opt->excludes(preset_opt);
  run_cmd->add_option("--seed", seed, "Master seed");
  run_cmd->add_option("--out", out_dir, "Output directory (MINIMAX_OUT overrides)");

  auto* plan_cmd = app.add_subcommand("plan", "Print the step-size plan as JSON");
  int theorem = 0;
  std::string params;
  plan_cmd->add_option("--theorem", theorem, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  plan_cmd->add_option("--params", params, "JSON with L_f, nu, K, T")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a combination matrix");
  std::string topology;
  validate_cmd->add_option("--topology", topology, "Topology JSON")->required();

  auto* list_cmd = app.add_subcommand("list-presets", "List bundled presets");

  try {
    app.parse(argc, argv);
    if (*run_cmd && config_path.empty() && preset_name.empty()) {
      throw CLI::RequiredError("--config or --preset");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, preset_name, seed, out_dir, out);
    if (*plan_cmd) return cmd_plan(theorem, params, out);
    if (*validate_cmd) return cmd_validate(topology, out);
    if (*list_cmd) {
      for (const auto& n : preset_names()) out << n << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    if (*run_cmd && !preset_name.empty()) err << run_cmd->help();
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace minimax::cli
