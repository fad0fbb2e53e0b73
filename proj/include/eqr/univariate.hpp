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

#ifndef EQR_UNIVARIATE_HPP_
#define EQR_UNIVARIATE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace eqr
{

/// Positive observations sorted ascending.
///
/// Order statistics use the 1-indexed convention Y_{1,n} <= ... <= Y_{n,n};
/// callers pass tail counts k and the translation to storage indices stays
/// inside this module.
class OrderedSample
{
public:
  /// Stable ascending sort. Throws TooFewObservations (n < 2),
  /// NonFiniteObservation or NonPositiveObservation (message names the
  /// index of the first offender).
  static OrderedSample from_raw(std::span<const double> raw);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  /// Y_{j,n}, 1 <= j <= n.
  double order_statistic(std::size_t j) const;

  /// Y_{n-k,n}, the tail threshold for k exceedances.
  double threshold(std::size_t k) const;

private:
  explicit OrderedSample(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

inline OrderedSample order_sample(std::span<const double> raw)
{
  return OrderedSample::from_raw(raw);
}

struct LogMoments
{
  double m1 = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
};

struct TailEstimates
{
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma_m = 0.0;
  double sigma_m = 0.0;
  double threshold = 0.0;  // Y_{n-k,n}
  std::size_t k = 0;
  std::size_t n = 0;
};

/// Tail count k, target probability p and sample size n with 1 <= k < n and
/// 0 < p < k/n.
class QuantileQuery
{
public:
  /// Throws InvalidQuery when the invariants fail.
  QuantileQuery(std::size_t k, double p, std::size_t n);

  std::size_t k() const noexcept { return k_; }
  double p() const noexcept { return p_; }
  std::size_t n() const noexcept { return n_; }
  /// d_n = k / (n p) > 1.
  double extrapolation_ratio() const noexcept;

private:
  std::size_t k_;
  double p_;
  std::size_t n_;
};

/// M^(l) = (1/k) sum_{j<k} (ln Y_{n-j,n} - ln Y_{n-k,n})^l for l = 1, 2.
LogMoments log_moments(const OrderedSample & s, std::size_t k);

/// Moment estimator of the extreme value index with its scale companion.
/// Throws DegenerateTail when the top log-spacings leave the negative part
/// undefined (m2 = 0, or all spacings equal so m1^2 = m2).
TailEstimates moment_estimates(const OrderedSample & s, std::size_t k);

/// (d^g - 1)/g, with the analytic limit ln d for |g| < 1e-9.
double extrapolation_factor(double gamma, double d);

/// Y_{n-k,n} + sigma_M (d_n^gamma_M - 1)/gamma_M.
double extreme_quantile(const OrderedSample & s, const QuantileQuery & q);
double extreme_quantile(const TailEstimates & est, const QuantileQuery & q);

/// q_gamma(t) = integral_1^t s^(gamma-1) ln s ds, closed form. t >= 1.
double q_gamma(double gamma, double t);

/// Leading-order behaviour of q_gamma as t -> infinity.
double q_gamma_asymptotic(double gamma, double t);

inline constexpr double kGammaZeroThreshold = 1e-9;

struct ScheduleEntry
{
  double n = 0.0;
  double k = 0.0;
  double h = 0.0;
};

struct DecayReport
{
  enum class Case
  {
    PositiveIndex,  // sqrt(k) h
    ZeroIndex,      // sqrt(k) h (n/k)^delta
    NegativeIndex,  // sqrt(k) h (n/k)^(-gamma)
  };

  Case which = Case::PositiveIndex;
  std::vector<double> values;
  bool decaying = false;
  std::string note;
};

/// Evaluates the sufficient condition for sqrt(k) z_n -> 0 along a finite
/// schedule. Verdict: last value < 0.5 * first value. delta is only used for
/// gamma = 0. Throws InvalidSchedule.
DecayReport check_decay_conditions(
  double gamma, std::span<const ScheduleEntry> schedule, double delta = 0.1);

}  // namespace eqr

#endif  // EQR_UNIVARIATE_HPP_
