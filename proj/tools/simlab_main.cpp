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

// simlab: Monte Carlo runner for the estimator verification suites.
//
//   simlab run --config cfg.json --out dir [--reps N] [--seed S] [--threads T]
//   simlab validate --config cfg.json
//   simlab list
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 config or IO error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eqr/error.hpp"
#include "eqr/simlab/config.hpp"
#include "eqr/simlab/emit.hpp"
#include "eqr/simlab/runner.hpp"

namespace
{

constexpr int kExitPass = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitConfig = 2;

int cmd_list()
{
  std::cout << "experiments:\n";
  for (const auto kind : eqr::simlab::all_experiments()) {
    std::cout << "  " << eqr::simlab::experiment_name(kind) << '\n';
  }
  std::cout << "models:\n";
  for (const auto & [name, params] : eqr::simlab::model_catalog()) {
    std::cout << "  " << name << "  (" << params << ")\n";
  }
  return kExitPass;
}

int cmd_validate(const std::string & config_path)
{
  const auto cfg = eqr::simlab::load_config(config_path);
  std::cout << "ok: " << cfg.id << " (" << eqr::simlab::experiment_name(cfg.experiment) << ", "
            << cfg.n_grid.size() << " grid points, " << cfg.replications << " replications)\n";
  return kExitPass;
}

int cmd_run(
  const std::string & config_path, const std::string & out_dir, std::optional<std::size_t> reps,
  std::optional<std::uint64_t> seed, std::optional<std::size_t> threads)
{
  auto cfg = eqr::simlab::load_config(config_path);
  if (reps) {
    cfg.replications = *reps;
  }
  if (seed) {
    cfg.master_seed = *seed;
  }
  if (threads) {
    cfg.threads = *threads;
  }
  eqr::simlab::validate_config(cfg);

  const auto result = eqr::simlab::run_experiment(cfg);
  eqr::simlab::emit(cfg, result, out_dir);

  for (const auto & v : result.report.verdicts) {
    std::cout << (v.passed ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
  }
  for (const auto & w : result.report.warnings) {
    std::cout << "warning: " << w << '\n';
  }
  std::cout << result.report.total_records << " records (" << result.report.failed_records
            << " failed) written to " << out_dir << '\n';
  return result.report.all_passed() ? kExitPass : kExitVerdict;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"simlab: Monte Carlo verification of extreme quantile estimators"};
  app.set_version_flag("--version", std::string(eqr::simlab::tool_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;

  auto * run = app.add_subcommand("run", "Run an experiment and write records.csv and summary.json");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--reps", reps, "Override replications");
  run->add_option("--seed", seed, "Override master_seed");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto * validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", config_path, "Experiment config (JSON)")->required();

  auto * list = app.add_subcommand("list", "List experiments and models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_dir, reps, seed, threads);
    }
    if (validate->parsed()) {
      return cmd_validate(config_path);
    }
    if (list->parsed()) {
      return cmd_list();
    }
  } catch (const eqr::Error & e) {
    std::cerr << "simlab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception & e) {
    std::cerr << "simlab: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
