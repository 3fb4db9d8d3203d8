#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "minimax/optimizers.hpp"
#include "minimax/planner.hpp"
#include "minimax/problem.hpp"
#include "minimax/problems.hpp"
#include "minimax/topology.hpp"

namespace minimax {

// --- configuration ---------------------------------------------------------

enum class ProblemKind { kQuadratic, kBilinear, kWgan1d };

struct BilinearSpec {
  double scale = 1.0;
  double noise = 0.0;
  int dim = 1;
};

struct WganSpec {
  std::vector<double> pi{0.0};        // one entry (shared) or K entries
  std::vector<double> sigma2{0.001};
  double lambda = 0.1;
  Regularizer regularizer = Regularizer::kSquared;
  int oracle_samples = 100'000;
  std::uint64_t oracle_seed = 0x5EEDULL;
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::kQuadratic;
  QuadraticConfig quadratic;  // num_agents is taken from the topology
  BilinearSpec bilinear;
  WganSpec wgan;
};

enum class TopologyKind { kRing, kRandom, kExplicit };

struct TopologySpec {
  TopologyKind kind = TopologyKind::kRing;
  int num_agents = 8;
  double edge_prob = 0.4;
  std::uint64_t seed = 1;
  std::vector<std::vector<int>> neighbors;  // explicit graphs
  std::optional<Mat> weights;               // explicit matrix, overrides neighbors
};

// A step size is either a number or deferred to the phase-one planner.
struct StepSetting {
  std::optional<double> value;
  bool planned() const { return !value.has_value(); }
};

struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::kDssOg;
  StepSetting mu_x{0.01};
  StepSetting mu_y{0.01};
  AdamParams adam;
  double tau3_factor = kDefaultTau3Factor;
  std::optional<double> jgamma_sq;  // defaults to mixing_rate^2
};

// random: independent N(0, scale^2) draws per agent; common: one such draw
// shared by every agent; constant: every entry equals x_value / y_value.
enum class InitKind { kRandom, kZeros, kCommon, kConstant };

struct InitSpec {
  InitKind kind = InitKind::kRandom;
  double x_scale = 1.0;
  double y_scale = 1.0;
  double x_value = 1.0;
  double y_value = 1.0;
};

enum class Phase2X { kCentroidBest, kPerAgentFrozen };
enum class Phase2Schedule { kDecaying, kConstant };

struct ExperimentConfig {
  std::string name = "experiment";
  ProblemSpec problem;
  TopologySpec topology;
  AlgorithmSpec algorithm;
  InitSpec init;
  int T = 1000;   // phase-one rounds
  int T1 = 0;     // phase-two rounds
  std::uint64_t seed = 0;
  int cadence = 10;
  int n_repeats = 1;
  int metric_batch = 1;  // samples per agent behind stoch_grad_avg
  Phase2X phase2_x = Phase2X::kCentroidBest;
  Phase2Schedule phase2_schedule = Phase2Schedule::kDecaying;
  std::optional<double> phase2_mu_y;  // fixed phase-two dual step, overrides the schedule
  std::vector<Algorithm> compare;     // extra algorithms run on the same setup
  std::vector<int> rate_T;            // horizons for rate probes
};

void validate_config(const ExperimentConfig& cfg);

// --- trace -----------------------------------------------------------------

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TraceRecord {
  long iter = 0;
  int phase = 1;
  Vec x_c, y_c;
  double grad_x_sq = kNaN;
  double grad_y_sq = kNaN;
  double grad_P_sq = kNaN;
  double net_dev = kNaN;
  double increment = kNaN;
  double dual_gap = kNaN;
  double stoch_grad_avg = kNaN;
  double moment_mse = kNaN;
};

struct Trace {
  TraceRecord initial;  // the initialization pair, before any round
  std::vector<TraceRecord> records;
};

struct ExperimentSummary {
  std::string name;
  std::string algorithm;
  double mu_x = 0.0;
  double mu_y = 0.0;
  std::optional<StepPlan> plan;
  SpectralInfo spectral;
  std::string best_metric;
  long best_index = -1;  // iteration of the best phase-one record
  double best_value = kNaN;
  double final_dual_gap = kNaN;
  int n_repeats = 1;
  TraceRecord initial;
  TraceRecord final_record;
  TraceRecord phase1_mean;  // time averages over phase-one records
  std::optional<TraceRecord> phase2_mean;
};

struct ExperimentResult {
  Trace trace;
  ExperimentSummary summary;
};

// Everything needed to step and measure one configuration.
struct Setup {
  ProblemPtr problem;      // the distributed problem, weighted by the Perron vector
  ProblemPtr run_problem;  // problem seen by the optimizer (a fused view for css-og)
  CombinationMatrix a;
  CombinationMatrix run_a;
  SpectralInfo spectral;
  StepSizes steps;
  std::optional<StepPlan> plan;
};

Setup make_setup(const ExperimentConfig& cfg);
ProblemPtr make_problem(const ProblemSpec& spec, const std::vector<double>& weights);
CombinationMatrix make_topology(const TopologySpec& spec);

NetworkState initial_state(const ExperimentConfig& cfg, const Setup& setup,
                           const StreamFactory& streams);

// Perron-weighted centroid of a column matrix.
Vec centroid(const Mat& columns, const Vec& perron);

// Fills every metric of one record. `previous` is the state before the round
// (for the increment); null leaves it unset.
TraceRecord measure(const Setup& setup, const NetworkState& state, const NetworkState* previous,
                    const StreamFactory& streams, int metric_batch);

// Single-seed run.
Trace run_single(const ExperimentConfig& cfg, const Setup& setup, std::uint64_t seed);

// Averages n_repeats independent seeds (run in parallel) and summarizes.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Average of traces with identical layout.
Trace average_traces(const std::vector<Trace>& traces);

struct BestIterate {
  std::size_t index = 0;
  double value = 0.0;
};

enum class BestMetric { kAuto, kGradP, kGradX };

// Minimizer over phase-one records; ties go to the smallest index. kAuto uses
// grad_P_sq when every phase-one record has it, else grad_x_sq.
BestIterate best_iterate(const Trace& trace, BestMetric metric = BestMetric::kAuto);
BestIterate best_iterate(const std::vector<double>& values);

// P(x) - J(x, y), from the closed-form inner max or, when the problem only
// declares a PL constant, from gradient ascent in y.
double dual_gap(const Problem& problem, const Vec& x, const Vec& y);

struct RateRow {
  int T = 0;
  double value = kNaN;
};

enum class RateMetric { kAuto, kAveragedGradP, kFinalDualGap };

// Runs the experiment at each horizon (planned steps are re-derived for each
// T). kAuto picks the final dual gap when T1 > 0: the probe horizon is then
// the phase-two length and phase one is kept at cfg.T.
std::vector<RateRow> rate_probe(const ExperimentConfig& cfg, const std::vector<int>& T_list,
                                RateMetric metric = RateMetric::kAuto);

// --- output ----------------------------------------------------------------

inline constexpr const char* kTraceHeader =
    "iter,grad_x_sq,grad_y_sq,grad_P_sq,net_dev,increment,dual_gap,stoch_grad_avg,moment_mse,phase";

void write_trace_csv(std::ostream& out, const Trace& trace);
std::string summary_json(const ExperimentSummary& summary);

}  // namespace minimax
