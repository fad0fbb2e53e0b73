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

#include "eqr/simlab/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqr/error.hpp"

namespace eqr::simlab
{

namespace
{
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double sample_quantile(std::vector<double> values, double q)
{
  if (values.empty()) {
    return kNaN;
  }
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Aggregate aggregate(
  std::size_t n, std::size_t count, std::size_t failures, std::span<const double> values,
  std::optional<double> reference)
{
  Aggregate a;
  a.n = n;
  a.count = count;
  a.failures = failures;
  std::vector<double> finite;
  finite.reserve(values.size());
  for (const double v : values) {
    if (std::isfinite(v)) {
      finite.push_back(v);
    }
  }
  if (finite.empty()) {
    a.mean = a.median = a.rmse = a.p05 = a.p95 = kNaN;
    return a;
  }
  double sum = 0.0;
  double sq = 0.0;
  for (const double v : finite) {
    sum += v;
    if (reference) {
      sq += (v - *reference) * (v - *reference);
    }
  }
  const auto m = static_cast<double>(finite.size());
  a.mean = sum / m;
  a.rmse = reference ? std::sqrt(sq / m) : kNaN;
  a.median = sample_quantile(finite, 0.5);
  a.p05 = sample_quantile(finite, 0.05);
  a.p95 = sample_quantile(std::move(finite), 0.95);
  return a;
}

std::optional<SlopeFit> log_log_slope(std::span<const double> x, std::span<const double> y)
{
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  const std::size_t m = lx.size();
  if (m < 3) {
    return std::nullopt;
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    return std::nullopt;
  }
  SlopeFit fit;
  fit.points = m;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - fit.intercept - fit.slope * lx[i];
    rss += r * r;
  }
  fit.residual_se = std::sqrt(rss / static_cast<double>(m - 2));
  return fit;
}

bool SummaryReport::all_passed() const noexcept
{
  if (verdicts.empty()) {
    return false;
  }
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict & v) { return v.passed; });
}

const StatisticSummary * SummaryReport::find(const std::string & name) const noexcept
{
  for (const auto & s : statistics) {
    if (s.name == name) {
      return &s;
    }
  }
  return nullptr;
}

double aggregate_field(const Aggregate & a, const std::string & field)
{
  if (field == "mean") return a.mean;
  if (field == "median") return a.median;
  if (field == "rmse") return a.rmse;
  if (field == "p05") return a.p05;
  if (field == "p95") return a.p95;
  throw Error(ErrorCode::InvalidArgument, "unknown aggregate field " + field);
}

StatisticSummary summarize_column(
  std::span<const ReplicationRecord> records, std::span<const std::size_t> n_grid,
  std::size_t column, std::string name, std::optional<double> reference, std::string slope_of)
{
  StatisticSummary s;
  s.name = std::move(name);
  s.reference = reference;
  s.slope_of = std::move(slope_of);
  std::vector<double> xs;
  std::vector<double> ys;
  for (const std::size_t n : n_grid) {
    std::vector<double> values;
    std::size_t count = 0;
    std::size_t failures = 0;
    for (const auto & r : records) {
      if (r.n != n) {
        continue;
      }
      ++count;
      if (!r.ok()) {
        ++failures;
        continue;
      }
      values.push_back(r.payload.at(column));
    }
    s.per_n.push_back(aggregate(n, count, failures, values, reference));
    xs.push_back(static_cast<double>(n));
    ys.push_back(aggregate_field(s.per_n.back(), s.slope_of));
  }
  s.slope = log_log_slope(xs, ys);
  return s;
}

}  // namespace eqr::simlab
