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

#ifndef EQR_TAIL_MODELS_HPP_
#define EQR_TAIL_MODELS_HPP_

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eqr/linalg.hpp"
#include "eqr/point_set.hpp"
#include "eqr/random.hpp"

namespace eqr
{

/// Second-order parameter of models whose tail is exact at first order.
inline constexpr double kRhoExact = -std::numeric_limits<double>::infinity();

/// Reference distribution with closed-form quantile, CDF and known
/// extreme-value parameters. Immutable; copies share custom callables.
class TailModel
{
public:
  enum class Family
  {
    Pareto,       // F(x) = 1 - x^-alpha on [1, inf)
    Frechet,      // F(x) = exp(-x^-alpha) on (0, inf)
    Exponential,  // F(x) = 1 - exp(-rate x) on (0, inf)
    Bounded,      // U(t) = endpoint - t^gamma on (endpoint - 1, endpoint)
    Custom,
  };

  static TailModel pareto(double alpha);
  static TailModel frechet(double alpha);
  static TailModel exponential(double rate);
  static TailModel bounded(double endpoint, double gamma);

  /// User-supplied model. survival_quantile(s) must return U(1/s) for
  /// s in (0, 1]; cdf(x) the distribution function. No second-order data.
  static TailModel custom(
    std::string name, double gamma, std::function<double(double)> survival_quantile,
    std::function<double(double)> cdf, double support_min, double right_endpoint);

  Family family() const noexcept { return family_; }
  const std::string & name() const noexcept { return name_; }
  double gamma() const noexcept { return gamma_; }
  double rho() const noexcept { return rho_; }
  double support_min() const noexcept { return support_min_; }
  double right_endpoint() const noexcept { return right_endpoint_; }

  /// Largest p for which the ellipsoid-complement representation of the
  /// quantile region is declared valid: 1 where the density is
  /// nonincreasing on the whole support, 0 where it increases toward the
  /// endpoint (bounded, gamma < -1), 0.05 otherwise.
  double representation_threshold() const noexcept;

  /// U(t) = F^{-1}(1 - 1/t), t >= 1.
  double quantile(double t) const;
  /// U(1/s) evaluated without forming 1 - s; s in (0, 1].
  double survival_quantile(double s) const;
  double cdf(double x) const;
  double survival(double x) const;

  /// First-order scale function a(t). Throws UnknownModel for custom models.
  double scale(double t) const;

private:
  TailModel() = default;

  struct CustomFunctions
  {
    std::function<double(double)> survival_quantile;
    std::function<double(double)> cdf;
  };

  Family family_ = Family::Custom;
  std::string name_;
  double param_ = 0.0;  // alpha, rate, or endpoint
  double gamma_ = 0.0;
  double rho_ = kRhoExact;
  double support_min_ = 0.0;
  double right_endpoint_ = std::numeric_limits<double>::infinity();
  std::shared_ptr<const CustomFunctions> custom_;
};

inline TailModel model_pareto(double alpha) { return TailModel::pareto(alpha); }
inline TailModel model_frechet(double alpha) { return TailModel::frechet(alpha); }
inline TailModel model_exponential(double rate) { return TailModel::exponential(rate); }
inline TailModel model_bounded(double endpoint, double gamma)
{
  return TailModel::bounded(endpoint, gamma);
}

/// Which expression plays the role of Q(t) in the second-order condition
/// for ln U.
enum class QBranch
{
  SecondOrderA,   // Q = A
  ScaleRatio,     // Q = gamma_+ - a/U
  ScaledA,        // Q = rho/(gamma+rho) A
};

struct BranchSelection
{
  QBranch branch;
  double rho_prime;
};

/// Case table for (gamma, rho, l == 0). Throws UnknownModel when the table
/// leaves Q undetermined (gamma > 0 with rho = 0, or gamma = rho).
BranchSelection select_q_branch(double gamma, double rho, bool l_is_zero);

struct SecondOrderOracle
{
  std::function<double(double)> a_fn;
  std::function<double(double)> A_fn;  // identically 0 for exact models
  std::function<double(double)> Q_fn;
  double rho_prime = 0.0;
  QBranch branch = QBranch::ScaleRatio;
  /// lim U(t) - a(t)/gamma for gamma > 0, NaN otherwise.
  double l = std::numeric_limits<double>::quiet_NaN();
};

/// Throws UnknownModel for custom models.
SecondOrderOracle second_order_oracle(const TailModel & model);

/// Inverse-transform draws. Survival levels are clamped to
/// [2^-53, 1 - 2^-53].
std::vector<double> sample(const TailModel & model, std::size_t n, Rng & rng);

/// Draws from the law of X given X > threshold. Throws ThresholdAtEndpoint
/// when P(X > threshold) <= 1e-15.
std::vector<double> conditional_tail_sample(
  const TailModel & model, double threshold, std::size_t n, Rng & rng);

/// n points uniform on the unit sphere in R^d (normalized Gaussians).
PointSet sphere_sample(std::size_t d, std::size_t n, Rng & rng);

struct EllipticalDraw
{
  PointSet points;
  Vector radii;  // generating variates, in point order
};

/// X_i = mu + R_i sigma^{1/2} S_i. sigma must have unit determinant (1e-8).
EllipticalDraw elliptical_sample_with_radii(
  std::span<const double> mu, const SpdMatrix & sigma, const TailModel & generator,
  std::size_t n, Rng & rng);

PointSet elliptical_sample(
  std::span<const double> mu, const SpdMatrix & sigma, const TailModel & generator,
  std::size_t n, Rng & rng);

}  // namespace eqr

#endif  // EQR_TAIL_MODELS_HPP_
