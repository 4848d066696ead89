#ifndef AGGTS_CONFIG_JSON_HPP
#define AGGTS_CONFIG_JSON_HPP

#include "aggts/experiments.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace aggts::cli {

using nlohmann::json;

/// Throws ConfigError when the object holds a key outside `allowed`
/// (catches typos in experiment definitions).
void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& where);

json load_json_file(const std::string& path);

ScenarioSpec parse_scenario(const json& j);
json scenario_to_json(const ScenarioSpec& spec);

AggregationSpec parse_aggregation(const json& j);
CrossBasisConfig parse_cross_basis(const json& j);
ModelConfig parse_model(const json& j);
DataSource parse_data(const json& j);
CvConfig parse_cv(const json& j);
SurfaceConfig parse_surface(const json& j);

/// Full experiment config for compare: data, models, cv, surface.
ExperimentConfig parse_experiment(const json& j,
                                  const std::string& models_key = "models");

struct SweepRequest {
    ExperimentConfig config;
    std::vector<KernelKind> kernels;
    std::vector<int> windows;
};

SweepRequest parse_sweep(const json& j);

} // namespace aggts::cli

#endif
