#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "minimax/planner.hpp"
#include "minimax/simulator.hpp"
#include "minimax/topology.hpp"

namespace minimax {

using Json = nlohmann::json;

// Experiment configs. Parsing is strict: unknown keys and wrong types raise
// ConfigError. Serialization is the exact inverse of parsing.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

// Stand-alone topology documents: {"K": n, "neighbors": [[...], ...]} and/or
// {"A": [...]} with the matrix listed column by column.
TopologySpec topology_from_json(const Json& j);
Json topology_to_json(const TopologySpec& spec);
Json assumption6_json(const Assumption6Report& report, const SpectralInfo* spectral);

// Planner parameters {"L_f", "nu", "K", "T", "jgamma_sq", "tau3_factor"}.
StepPlan plan_from_json(int theorem, const Json& params);
Json plan_to_json(const StepPlan& plan);

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

}  // namespace minimax
