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

#ifndef EQR_SIMLAB_EMIT_HPP_
#define EQR_SIMLAB_EMIT_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eqr/simlab/config.hpp"
#include "eqr/simlab/runner.hpp"

namespace eqr::simlab
{

std::string_view tool_version() noexcept;

/// %.17g; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double v);

/// Header plus one row per record:
/// experiment,n,k,replication,seed,status,<payload columns>.
/// Failed records leave the payload fields empty.
std::string records_csv(const RunResult & result);

nlohmann::ordered_json summary_json(const ExperimentConfig & cfg, const RunResult & result);

/// Writes records.csv and summary.json into out_dir (created if missing).
/// Throws Error(IoError).
void emit(const ExperimentConfig & cfg, const RunResult & result, const std::filesystem::path & out_dir);

}  // namespace eqr::simlab

#endif  // EQR_SIMLAB_EMIT_HPP_
