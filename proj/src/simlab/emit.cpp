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

#include "eqr/simlab/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "eqr/error.hpp"

namespace eqr::simlab
{

using nlohmann::ordered_json;

std::string_view tool_version() noexcept { return EQR_VERSION; }

std::string format_double(double v)
{
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string records_csv(const RunResult & result)
{
  std::string out = "experiment,n,k,replication,seed,status";
  for (const auto & c : result.columns) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (const auto & r : result.records) {
    out += r.experiment;
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' +
           std::to_string(r.replication) + ',' + std::to_string(r.seed) + ',' + r.status;
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
      out += ',';
      if (r.ok()) {
        out += format_double(r.payload[c]);
      }
    }
    out += '\n';
  }
  return out;
}

namespace
{

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }

ordered_json statistic_json(const StatisticSummary & s)
{
  ordered_json j;
  j["name"] = s.name;
  j["reference"] = s.reference ? ordered_json(*s.reference) : ordered_json();
  ordered_json rows = ordered_json::array();
  for (const auto & a : s.per_n) {
    ordered_json row;
    row["n"] = a.n;
    row["count"] = a.count;
    row["failures"] = a.failures;
    row["mean"] = number_or_null(a.mean);
    row["median"] = number_or_null(a.median);
    row["rmse"] = number_or_null(a.rmse);
    row["p05"] = number_or_null(a.p05);
    row["p95"] = number_or_null(a.p95);
    rows.push_back(row);
  }
  j["per_n"] = rows;
  ordered_json slope;
  slope["statistic"] = s.slope_of;
  if (s.slope) {
    slope["slope"] = s.slope->slope;
    slope["intercept"] = s.slope->intercept;
    slope["residual_se"] = s.slope->residual_se;
    slope["points"] = s.slope->points;
  } else {
    slope["slope"] = nullptr;
    slope["note"] = "needs at least 3 grid points with positive values";
  }
  j["log_log_slope"] = slope;
  return j;
}

void write_file(const std::filesystem::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  out << text;
  out.close();
  if (!out) {
    throw Error(ErrorCode::IoError, "failed writing " + path.string());
  }
}

}  // namespace

ordered_json summary_json(const ExperimentConfig & cfg, const RunResult & result)
{
  const SummaryReport & rep = result.report;
  ordered_json j;
  j["tool"] = "simlab";
  j["version"] = std::string(tool_version());
  j["experiment"] = rep.experiment;
  j["config"] = config_to_json(cfg);
  ordered_json counts;
  counts["total"] = rep.total_records;
  counts["failed"] = rep.failed_records;
  counts["replications_per_n"] = cfg.replications;
  j["records"] = counts;
  ordered_json stats = ordered_json::array();
  for (const auto & s : rep.statistics) {
    stats.push_back(statistic_json(s));
  }
  j["statistics"] = stats;
  ordered_json verdicts = ordered_json::array();
  ordered_json failing = ordered_json::array();
  for (const auto & v : rep.verdicts) {
    ordered_json vj;
    vj["name"] = v.name;
    vj["passed"] = v.passed;
    vj["detail"] = v.detail;
    verdicts.push_back(vj);
    if (!v.passed) {
      failing.push_back(v.name);
    }
  }
  j["verdicts"] = verdicts;
  j["failing_verdicts"] = failing;
  j["all_passed"] = rep.all_passed();
  j["thresholds_note"] =
    "Verdict tolerances (index bias, boundedness factor, ratio bound) are engineering "
    "thresholds for desk-scale runs, not derived results.";
  j["warnings"] = rep.warnings;
  return j;
}

void emit(const ExperimentConfig & cfg, const RunResult & result, const std::filesystem::path & out_dir)
{
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
  }
  write_file(out_dir / "records.csv", records_csv(result));
  write_file(out_dir / "summary.json", summary_json(cfg, result).dump(2) + "\n");
}

}  // namespace eqr::simlab
