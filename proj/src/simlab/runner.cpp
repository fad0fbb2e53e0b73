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

#include "eqr/simlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "eqr/error.hpp"
#include "eqr/random.hpp"
#include "eqr/simlab/experiments.hpp"
#include "eqr/simlab/seed.hpp"

namespace eqr::simlab
{

namespace
{

void run_one(const Experiment & exp, ReplicationRecord & rec)
{
  Rng rng(rec.seed);
  try {
    auto payload = exp.replicate(rec.n, rng);
    const bool finite = std::all_of(
      payload.begin(), payload.end(), [](double v) { return std::isfinite(v); });
    if (!finite) {
      rec.status = "NonFinitePayload";
      rec.message = "replication produced a non-finite value";
      return;
    }
    rec.payload = std::move(payload);
  } catch (const Error & e) {
    rec.status = std::string(error_code_name(e.code()));
    rec.message = e.what();
  } catch (const std::exception & e) {
    rec.status = "InternalError";
    rec.message = e.what();
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig & cfg)
{
  validate_config(cfg);
  const auto exp = make_experiment(cfg);

  RunResult result;
  result.columns = exp->columns();
  result.records.resize(cfg.n_grid.size() * cfg.replications);
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    for (std::size_t r = 0; r < cfg.replications; ++r) {
      auto & rec = result.records[g * cfg.replications + r];
      rec.experiment = cfg.id;
      rec.n = cfg.n_grid[g];
      rec.k = cfg.k_at(rec.n);
      rec.replication = r;
      rec.seed = derive_seed(cfg.master_seed, cfg.id, rec.n, r);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < result.records.size(); i = next.fetch_add(1)) {
      run_one(*exp, result.records[i]);
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, result.records.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back(worker);
    }
    for (auto & t : pool) {
      t.join();
    }
  }

  result.report = exp->summarize(result.records);
  return result;
}

}  // namespace eqr::simlab
