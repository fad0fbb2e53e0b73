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

#ifndef EQR_SIMLAB_RUNNER_HPP_
#define EQR_SIMLAB_RUNNER_HPP_

#include <string>
#include <vector>

#include "eqr/simlab/config.hpp"
#include "eqr/simlab/summary.hpp"

namespace eqr::simlab
{

struct RunResult
{
  std::vector<std::string> columns;
  std::vector<ReplicationRecord> records;  // (n, replication) order
  SummaryReport report;
};

/// Runs every (n, replication) pair of the config on cfg.threads workers.
/// Each pair gets its own stream seeded by derive_seed, and records are
/// stored by position, so the output does not depend on the thread count.
RunResult run_experiment(const ExperimentConfig & cfg);

}  // namespace eqr::simlab

#endif  // EQR_SIMLAB_RUNNER_HPP_
