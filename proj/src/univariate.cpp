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

#include "eqr/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqr/error.hpp"
#include "eqr/kernels.hpp"

namespace eqr
{

OrderedSample OrderedSample::from_raw(std::span<const double> raw)
{
  if (raw.size() < 2) {
    throw Error(ErrorCode::TooFewObservations, "need at least 2 observations");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(ErrorCode::NonFiniteObservation, "index " + std::to_string(i));
    }
    if (!(raw[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveObservation, "index " + std::to_string(i));
    }
  }
  std::vector<double> values(raw.begin(), raw.end());
  std::stable_sort(values.begin(), values.end());
  return OrderedSample(std::move(values));
}

double OrderedSample::order_statistic(std::size_t j) const
{
  if (j < 1 || j > values_.size()) {
    throw Error(ErrorCode::InvalidArgument, "order statistic index out of range");
  }
  return values_[j - 1];
}

double OrderedSample::threshold(std::size_t k) const
{
  if (k < 1 || k >= values_.size()) {
    throw Error(ErrorCode::InvalidK, "k must satisfy 1 <= k < n");
  }
  return values_[values_.size() - k - 1];
}

QuantileQuery::QuantileQuery(std::size_t k, double p, std::size_t n) : k_(k), p_(p), n_(n)
{
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidQuery, "k must satisfy 1 <= k < n");
  }
  const double ratio = static_cast<double>(k) / static_cast<double>(n);
  if (!(p > 0.0) || !(p <= ratio) || !(p < 1.0)) {
    throw Error(ErrorCode::InvalidQuery, "p must satisfy 0 < p <= k/n");
  }
}

double QuantileQuery::extrapolation_ratio() const noexcept
{
  return static_cast<double>(k_) / (static_cast<double>(n_) * p_);
}

LogMoments log_moments(const OrderedSample & s, std::size_t k)
{
  const std::size_t n = s.size();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidK, "k must satisfy 1 <= k < n");
  }
  const auto values = s.values();
  // Top k values occupy storage [n-k, n); Y_{n-k,n} sits just below.
  std::vector<double> logs(k);
  for (std::size_t j = 0; j < k; ++j) {
    logs[j] = std::log(values[n - k + j]);
  }
  const double base = std::log(values[n - k - 1]);
  const auto sums = kernels::log_spacing_sums(logs, base);
  const auto kd = static_cast<double>(k);
  return LogMoments{sums.sum / kd, sums.sum_sq / kd, k};
}

TailEstimates moment_estimates(const OrderedSample & s, std::size_t k)
{
  const LogMoments lm = log_moments(s, k);
  if (!(lm.m2 > 0.0)) {
    throw Error(ErrorCode::DegenerateTail, "top k+1 order statistics are equal");
  }
  const double ratio = lm.m1 * lm.m1 / lm.m2;
  if (!(ratio < 1.0)) {
    throw Error(ErrorCode::DegenerateTail, "all top log-spacings are equal");
  }
  TailEstimates est;
  est.gamma_plus = lm.m1;
  est.gamma_minus = 1.0 - 0.5 / (1.0 - ratio);
  est.gamma_m = est.gamma_plus + est.gamma_minus;
  est.threshold = s.threshold(k);
  est.sigma_m = est.threshold * lm.m1 * (1.0 - est.gamma_minus);
  est.k = k;
  est.n = s.size();
  return est;
}

double extrapolation_factor(double gamma, double d)
{
  const double log_d = std::log(d);
  if (std::abs(gamma) < kGammaZeroThreshold) {
    return log_d;
  }
  return std::expm1(gamma * log_d) / gamma;
}

double extreme_quantile(const TailEstimates & est, const QuantileQuery & q)
{
  if (est.k != q.k() || est.n != q.n()) {
    throw Error(ErrorCode::InvalidQuery, "query k/n do not match the estimates");
  }
  return est.threshold + est.sigma_m * extrapolation_factor(est.gamma_m, q.extrapolation_ratio());
}

double extreme_quantile(const OrderedSample & s, const QuantileQuery & q)
{
  if (q.n() != s.size()) {
    throw Error(ErrorCode::InvalidQuery, "query n does not match the sample size");
  }
  return extreme_quantile(moment_estimates(s, q.k()), q);
}

double q_gamma(double gamma, double t)
{
  if (!(t >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "q_gamma requires t >= 1");
  }
  const double log_t = std::log(t);
  if (std::abs(gamma) < kGammaZeroThreshold) {
    return 0.5 * log_t * log_t;
  }
  // q = (ln t)^2 g(x) with x = gamma ln t and g(x) = (x e^x - (e^x - 1)) / x^2.
  const double x = gamma * log_t;
  double g = 0.0;
  if (std::abs(x) < 0.5) {
    // g(x) = sum_m x^m (m+1)/(m+2)!
    double term = 0.5;  // m = 0
    g = term;
    for (int m = 1; m < 30; ++m) {
      term *= x * static_cast<double>(m + 1) / (static_cast<double>(m) * static_cast<double>(m + 2));
      g += term;
    }
  } else {
    g = (x * std::exp(x) - std::expm1(x)) / (x * x);
  }
  return log_t * log_t * g;
}

double q_gamma_asymptotic(double gamma, double t)
{
  if (!(t > 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "q_gamma_asymptotic requires t > 1");
  }
  const double log_t = std::log(t);
  if (std::abs(gamma) < kGammaZeroThreshold) {
    return 0.5 * log_t * log_t;
  }
  if (gamma > 0.0) {
    return std::pow(t, gamma) * log_t / gamma;
  }
  return 1.0 / (gamma * gamma);
}

DecayReport check_decay_conditions(
  double gamma, std::span<const ScheduleEntry> schedule, double delta)
{
  if (schedule.size() < 2) {
    throw Error(ErrorCode::InvalidSchedule, "need at least two schedule entries");
  }
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto & e = schedule[i];
    if (!(e.k >= 1.0) || !(e.k < e.n) || !(e.h >= 0.0) || !std::isfinite(e.h)) {
      throw Error(
        ErrorCode::InvalidSchedule, "entry " + std::to_string(i) + " violates 1 <= k < n, h >= 0");
    }
    if (i > 0 && !(e.n > schedule[i - 1].n)) {
      throw Error(ErrorCode::InvalidSchedule, "n must be strictly increasing");
    }
  }
  const auto & first = schedule.front();
  const auto & last = schedule.back();
  if (!(last.k / last.n < first.k / first.n)) {
    throw Error(ErrorCode::InvalidSchedule, "k/n does not decrease along the schedule");
  }

  DecayReport report;
  if (std::abs(gamma) < kGammaZeroThreshold) {
    if (!(delta > 0.0)) {
      throw Error(ErrorCode::InvalidSchedule, "delta must be positive for gamma = 0");
    }
    report.which = DecayReport::Case::ZeroIndex;
  } else {
    report.which = gamma > 0.0 ? DecayReport::Case::PositiveIndex : DecayReport::Case::NegativeIndex;
  }

  report.values.reserve(schedule.size());
  for (const auto & e : schedule) {
    double v = std::sqrt(e.k) * e.h;
    switch (report.which) {
      case DecayReport::Case::PositiveIndex:
        break;
      case DecayReport::Case::ZeroIndex:
        v *= std::pow(e.n / e.k, delta);
        break;
      case DecayReport::Case::NegativeIndex:
        v *= std::pow(e.n / e.k, -gamma);
        break;
    }
    report.values.push_back(v);
  }
  const bool all_zero =
    std::all_of(report.values.begin(), report.values.end(), [](double v) { return v == 0.0; });
  report.decaying = all_zero || report.values.back() < 0.5 * report.values.front();
  report.note =
    "finite-schedule diagnostic: trend along the supplied schedule only, no limit is certified";
  return report;
}

}  // namespace eqr
