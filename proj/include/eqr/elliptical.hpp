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

#ifndef EQR_ELLIPTICAL_HPP_
#define EQR_ELLIPTICAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "eqr/linalg.hpp"
#include "eqr/point_set.hpp"
#include "eqr/random.hpp"
#include "eqr/tail_models.hpp"

namespace eqr
{

/// Location vector and unit-determinant scatter matrix.
struct LocationScatter
{
  Vector mu_hat;
  SpdMatrix sigma_hat;

  /// Throws DimensionMismatch, or DeterminantNotOne if |det - 1| > 1e-8.
  LocationScatter(Vector mu, SpdMatrix sigma);
};

/// Elliptical law mu + R sigma^{1/2} S with det(sigma) = 1.
struct EllipticalModel
{
  Vector mu;
  SpdMatrix sigma;
  TailModel generator;
};

/// {x : ||x - center||_shape >= radius}. The boundary belongs to the region.
struct QuantileRegion
{
  Vector center;
  SpdMatrix shape;
  double radius;

  QuantileRegion(Vector center, SpdMatrix shape, double radius);
};

/// Pluggable location/scatter estimation. Implementations return a scatter
/// estimate already normalized to unit determinant.
class LocationScatterEstimator
{
public:
  virtual ~LocationScatterEstimator() = default;
  virtual LocationScatter estimate(const PointSet & data) const = 0;
};

/// Sample mean and sample covariance (1/(n-1)) divided by det^{1/d}.
/// Affine equivariant; root-n consistent when the generator has a finite
/// fourth moment.
class SampleMeanCovariance final : public LocationScatterEstimator
{
public:
  LocationScatter estimate(const PointSet & data) const override;
};

/// Known parameters returned regardless of the data.
class FixedLocationScatter final : public LocationScatterEstimator
{
public:
  explicit FixedLocationScatter(LocationScatter ls) : ls_(std::move(ls)) {}
  LocationScatter estimate(const PointSet & data) const override;

private:
  LocationScatter ls_;
};

/// Throws TooFewObservations (n <= d) or SingularCovariance.
LocationScatter estimate_location_scatter(const PointSet & data);

/// R_i = ||X_i - mu_hat||_{sigma_hat}.
std::vector<double> residuals(const PointSet & data, const LocationScatter & ls);

/// Same norm for an arbitrary (not necessarily normalized) scatter.
std::vector<double> residuals(
  const PointSet & data, std::span<const double> center, const SpdMatrix & shape);

/// Ellipsoid-complement region with radius given by the moment-based extreme
/// quantile of the residuals.
QuantileRegion estimate_region(const PointSet & data, std::size_t k, double p);
QuantileRegion estimate_region(
  const PointSet & data, std::size_t k, double p, const LocationScatterEstimator & estimator);

/// Region with radius equal to the largest residual.
QuantileRegion max_region(const PointSet & data);
QuantileRegion max_region(const PointSet & data, const LocationScatterEstimator & estimator);

/// True region: radius U_R(1/p). Throws InvalidP when p exceeds the
/// generator's representation threshold or is not in (0, 1).
QuantileRegion true_region(const EllipticalModel & model, double p);

bool region_contains(const QuantileRegion & region, std::span<const double> x);

/// Image {A x + b : x in region}. Throws SingularTransform.
QuantileRegion affine_transform_region(
  const QuantileRegion & region, const Matrix & a, std::span<const double> b);

struct SymDiffEstimate
{
  double probability = 0.0;
  double std_error = 0.0;
  double threshold = 0.0;  // r0: draws are conditioned on R > r0
  double tail_mass = 1.0;  // P(R > r0)
};

/// Conditional Monte Carlo estimate of P(X in A xor B) under the true law.
/// Throws InvalidArgument for n_mc < 1000.
SymDiffEstimate sym_diff_probability(
  const QuantileRegion & a, const QuantileRegion & b, const EllipticalModel & truth,
  std::size_t n_mc, Rng & rng);

/// Largest r such that every x with ||x - mu||_sigma < r lies strictly
/// inside the ellipsoid complement of the region (0 if none).
double inscribed_true_radius(const QuantileRegion & region, const EllipticalModel & truth);

}  // namespace eqr

#endif  // EQR_ELLIPTICAL_HPP_
