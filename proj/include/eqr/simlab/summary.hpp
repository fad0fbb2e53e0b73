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

#ifndef EQR_SIMLAB_SUMMARY_HPP_
#define EQR_SIMLAB_SUMMARY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eqr::simlab
{

/// One replication. status is "ok" or the name of the error code that
/// stopped it, in which case payload is empty.
struct ReplicationRecord
{
  std::string experiment;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  std::string message;
  std::vector<double> payload;

  bool ok() const noexcept { return status == "ok"; }
};

/// Type-7 (linear interpolation) sample quantile of unsorted data.
/// NaN for empty input.
double sample_quantile(std::vector<double> values, double q);

struct Aggregate
{
  std::size_t n = 0;
  std::size_t count = 0;     // records at this n
  std::size_t failures = 0;  // records with a non-ok status
  double mean = 0.0;
  double median = 0.0;
  double rmse = 0.0;  // against the reference value, NaN without one
  double p05 = 0.0;
  double p95 = 0.0;
};

/// Aggregates of the finite values. reference feeds the RMSE.
Aggregate aggregate(
  std::size_t n, std::size_t count, std::size_t failures, std::span<const double> values,
  std::optional<double> reference);

struct SlopeFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double residual_se = 0.0;
  std::size_t points = 0;
};

/// OLS of ln y on ln x over pairs with x, y > 0 and finite. Needs at least
/// three usable points.
std::optional<SlopeFit> log_log_slope(std::span<const double> x, std::span<const double> y);

/// Per-n aggregates of one payload column.
struct StatisticSummary
{
  std::string name;
  std::optional<double> reference;
  std::vector<Aggregate> per_n;
  std::string slope_of;  // which aggregate the slope is fitted to
  std::optional<SlopeFit> slope;
};

struct Verdict
{
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SummaryReport
{
  std::string experiment;
  std::vector<StatisticSummary> statistics;
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;
  std::size_t total_records = 0;
  std::size_t failed_records = 0;

  bool all_passed() const noexcept;
  const StatisticSummary * find(const std::string & name) const noexcept;
};

/// Builds the StatisticSummary for payload column `column` across the grid.
/// slope_of selects "mean", "median", "rmse", "p05" or "p95".
StatisticSummary summarize_column(
  std::span<const ReplicationRecord> records, std::span<const std::size_t> n_grid,
  std::size_t column, std::string name, std::optional<double> reference, std::string slope_of);

double aggregate_field(const Aggregate & a, const std::string & field);

}  // namespace eqr::simlab

#endif  // EQR_SIMLAB_SUMMARY_HPP_
