// Copyright 2026 The eqr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EQR_SIMLAB_CONFIG_HPP_
#define EQR_SIMLAB_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eqr/linalg.hpp"
#include "eqr/tail_models.hpp"

namespace eqr::simlab
{

enum class ExperimentKind
{
  UniConsistency,
  ErrorPropagation,
  RatioBound,
  EllipticalConsistency,
};

std::string_view experiment_name(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment_name(std::string_view name) noexcept;
const std::vector<ExperimentKind> & all_experiments() noexcept;

/// c * n^a.
struct PowerRule
{
  double coefficient = 1.0;
  double exponent = 0.0;

  double operator()(double n) const;
};

/// A named reference model with its parameters, as written in the config.
struct ModelSpec
{
  std::string name;  // pareto | frechet | exponential | bounded
  double alpha = 0.0;
  double rate = 0.0;
  double endpoint = 0.0;
  double gamma = 0.0;

  TailModel build() const;
  nlohmann::ordered_json to_json() const;
};

/// Built-in model names with their parameter keys, for `simlab list`.
const std::vector<std::pair<std::string, std::string>> & model_catalog() noexcept;

enum class Perturbation
{
  Uniform,      // eps_i ~ U[-h, h]
  Alternating,  // eps_i = +h, -h, +h, ... in sample order
};

enum class ScatterMode
{
  Sample,  // sample mean + det-normalized sample covariance
  Oracle,  // true location and scatter (diagnostic)
};

struct Tolerances
{
  double index_bias = 0.12;
  double bounded_factor = 2.0;
  double ratio_max = 0.5;
};

struct ExperimentConfig
{
  std::string id;
  ExperimentKind experiment = ExperimentKind::UniConsistency;
  ModelSpec model;
  std::vector<std::size_t> n_grid;
  PowerRule k_rule;
  PowerRule p_rule;
  std::optional<PowerRule> h_rule;
  Perturbation perturbation = Perturbation::Uniform;
  double delta = 0.1;
  std::size_t dimension = 1;
  Vector location;
  std::optional<Matrix> scatter;
  ScatterMode scatter_mode = ScatterMode::Sample;
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;
  std::size_t mc_draws = 100000;
  std::size_t threads = 1;
  Tolerances tolerances;

  /// floor(k_rule(n)).
  std::size_t k_at(std::size_t n) const;
  double p_at(std::size_t n) const;
  double h_at(std::size_t n) const;

  /// Location vector, defaulting to the origin.
  Vector location_or_default() const;
  /// Scatter matrix, defaulting to the identity. Throws ConfigError if the
  /// supplied matrix is not SPD with unit determinant.
  SpdMatrix scatter_or_default() const;
};

/// Parses and validates a config document. Unknown keys, missing required
/// keys and violated invariants throw Error(ConfigError).
ExperimentConfig parse_config(const nlohmann::json & doc);
ExperimentConfig load_config(const std::filesystem::path & path);

/// Checks grid/rule invariants; called by parse_config and again after CLI
/// overrides.
void validate_config(const ExperimentConfig & cfg);

/// Canonical echo of the config for summary.json. The thread count is left
/// out so output does not depend on it.
nlohmann::ordered_json config_to_json(const ExperimentConfig & cfg);

}  // namespace eqr::simlab

#endif  // EQR_SIMLAB_CONFIG_HPP_
