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

#include "eqr/elliptical.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "eqr/error.hpp"
#include "eqr/kernels.hpp"
#include "eqr/univariate.hpp"

namespace eqr
{

namespace
{

constexpr double kUnitDeterminantTolerance = 1e-8;

void require_unit_determinant(const SpdMatrix & m, const char * what)
{
  if (std::abs(determinant(m) - 1.0) > kUnitDeterminantTolerance) {
    throw Error(ErrorCode::DeterminantNotOne, std::string(what) + " must have unit determinant");
  }
}

}  // namespace

LocationScatter::LocationScatter(Vector mu, SpdMatrix sigma)
: mu_hat(std::move(mu)), sigma_hat(std::move(sigma))
{
  if (mu_hat.size() != sigma_hat.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "location and scatter dimensions differ");
  }
  require_unit_determinant(sigma_hat, "scatter estimate");
}

QuantileRegion::QuantileRegion(Vector c, SpdMatrix s, double r)
: center(std::move(c)), shape(std::move(s)), radius(r)
{
  if (center.size() != shape.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "region center and shape dimensions differ");
  }
  require_unit_determinant(shape, "region shape");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "region radius must be positive and finite");
  }
}

LocationScatter SampleMeanCovariance::estimate(const PointSet & data) const
{
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  if (n <= d) {
    throw Error(ErrorCode::TooFewObservations, "need more observations than dimensions");
  }
  Vector mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.row(i);
    for (std::size_t a = 0; a < d; ++a) {
      mean[a] += x[a];
    }
  }
  for (auto & m : mean) {
    m /= static_cast<double>(n);
  }

  Matrix cov(d, d);
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.row(i);
    for (std::size_t a = 0; a < d; ++a) {
      diff[a] = x[a] - mean[a];
    }
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) {
        cov(a, b) += diff[a] * diff[b];
      }
    }
  }
  const double denom = static_cast<double>(n - 1);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      cov(a, b) /= denom;
      cov(b, a) = cov(a, b);
    }
  }

  try {
    return LocationScatter(std::move(mean), det_normalize(SpdMatrix(cov)));
  } catch (const Error & e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) {
      throw Error(ErrorCode::SingularCovariance, e.what());
    }
    throw;
  }
}

LocationScatter FixedLocationScatter::estimate(const PointSet & data) const
{
  if (data.dim() != ls_.mu_hat.size()) {
    throw Error(ErrorCode::DimensionMismatch, "data dimension differs from fixed parameters");
  }
  return ls_;
}

LocationScatter estimate_location_scatter(const PointSet & data)
{
  return SampleMeanCovariance{}.estimate(data);
}

std::vector<double> residuals(
  const PointSet & data, std::span<const double> center, const SpdMatrix & shape)
{
  if (data.dim() != shape.dim() || center.size() != shape.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "data, center and shape dimensions differ");
  }
  const SpdMatrix precision = spd_inverse(shape);
  std::vector<double> out(data.size());
  kernels::quadratic_forms(data.data(), data.dim(), center, precision.matrix().data(), out);
  for (auto & v : out) {
    v = std::sqrt(std::max(v, 0.0));
  }
  return out;
}

std::vector<double> residuals(const PointSet & data, const LocationScatter & ls)
{
  return residuals(data, ls.mu_hat, ls.sigma_hat);
}

QuantileRegion estimate_region(
  const PointSet & data, std::size_t k, double p, const LocationScatterEstimator & estimator)
{
  LocationScatter ls = estimator.estimate(data);
  const auto r = residuals(data, ls);
  const auto ordered = OrderedSample::from_raw(r);
  const double radius = extreme_quantile(ordered, QuantileQuery(k, p, ordered.size()));
  return QuantileRegion(std::move(ls.mu_hat), std::move(ls.sigma_hat), radius);
}

QuantileRegion estimate_region(const PointSet & data, std::size_t k, double p)
{
  return estimate_region(data, k, p, SampleMeanCovariance{});
}

QuantileRegion max_region(const PointSet & data, const LocationScatterEstimator & estimator)
{
  LocationScatter ls = estimator.estimate(data);
  const auto r = residuals(data, ls);
  const double radius = *std::max_element(r.begin(), r.end());
  return QuantileRegion(std::move(ls.mu_hat), std::move(ls.sigma_hat), radius);
}

QuantileRegion max_region(const PointSet & data)
{
  return max_region(data, SampleMeanCovariance{});
}

QuantileRegion true_region(const EllipticalModel & model, double p)
{
  if (!(p > 0.0) || !(p < 1.0) || p > model.generator.representation_threshold()) {
    throw Error(
      ErrorCode::InvalidP, "p outside the range where the ellipsoid representation holds for " +
                             model.generator.name());
  }
  return QuantileRegion(model.mu, model.sigma, model.generator.quantile(1.0 / p));
}

bool region_contains(const QuantileRegion & region, std::span<const double> x)
{
  return mahalanobis_norm(x, region.center, region.shape) >= region.radius;
}

QuantileRegion affine_transform_region(
  const QuantileRegion & region, const Matrix & a, std::span<const double> b)
{
  const std::size_t d = region.shape.dim();
  if (a.rows() != d || a.cols() != d || b.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "transform does not match region dimension");
  }
  if (general_determinant(a) == 0.0) {
    throw Error(ErrorCode::SingularTransform, "transform matrix is singular");
  }
  Vector center = a * std::span<const double>(region.center);
  for (std::size_t i = 0; i < d; ++i) {
    center[i] += b[i];
  }
  Matrix image = a * region.shape.matrix() * a.transposed();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double m = 0.5 * (image(i, j) + image(j, i));
      image(i, j) = m;
      image(j, i) = m;
    }
  }
  try {
    const SpdMatrix mapped(image);
    const double exponent = 1.0 / (2.0 * static_cast<double>(d));
    const double radius = region.radius * std::pow(determinant(mapped), exponent) /
                          std::pow(determinant(region.shape), exponent);
    return QuantileRegion(std::move(center), det_normalize(mapped), radius);
  } catch (const Error & e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) {
      throw Error(ErrorCode::SingularTransform, e.what());
    }
    throw;
  }
}

double inscribed_true_radius(const QuantileRegion & region, const EllipticalModel & truth)
{
  // ||x - c||_S <= sqrt(lambda_max(T^{1/2} S^-1 T^{1/2})) ||x - mu||_T + ||mu - c||_S
  const Matrix root = spd_sqrt(truth.sigma).matrix();
  const Matrix stretch = root * spd_inverse(region.shape).matrix() * root;
  const double gain = std::sqrt(operator_norm(stretch));
  const double offset = mahalanobis_norm(truth.mu, region.center, region.shape);
  return std::max(0.0, (region.radius - offset) / gain);
}

SymDiffEstimate sym_diff_probability(
  const QuantileRegion & a, const QuantileRegion & b, const EllipticalModel & truth,
  std::size_t n_mc, Rng & rng)
{
  if (n_mc < 1000) {
    throw Error(ErrorCode::InvalidArgument, "sym_diff_probability needs n_mc >= 1000");
  }
  const std::size_t d = truth.sigma.dim();
  if (a.shape.dim() != d || b.shape.dim() != d || truth.mu.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "regions and truth dimensions differ");
  }
  const TailModel & gen = truth.generator;

  // Draws with R below both inscribed radii fall in neither region, so
  // conditioning on R > r0 for any r0 up to that bound is exact.
  const double safe_a = inscribed_true_radius(a, truth);
  const double safe_b = inscribed_true_radius(b, truth);
  const double p_ref = gen.survival(std::max(safe_a, safe_b));
  double r0 = gen.support_min();
  if (100.0 * p_ref < 1.0 && p_ref > 0.0) {
    r0 = gen.quantile(1.0 / (100.0 * p_ref));
  }
  r0 = std::min({r0, safe_a, safe_b});

  SymDiffEstimate est;
  est.threshold = r0;
  est.tail_mass = gen.survival(r0);

  const auto radii = conditional_tail_sample(gen, r0, n_mc, rng);
  const auto dirs = sphere_sample(d, n_mc, rng);
  const Matrix root = spd_sqrt(truth.sigma).matrix();

  PointSet x(d);
  x.reserve(n_mc);
  std::vector<double> point(d);
  for (std::size_t i = 0; i < n_mc; ++i) {
    const auto s = dirs.row(i);
    for (std::size_t r = 0; r < d; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        acc += root(r, c) * s[c];
      }
      point[r] = truth.mu[r] + radii[i] * acc;
    }
    x.push_back(point);
  }

  const auto norm_a = residuals(x, a.center, a.shape);
  const auto norm_b = residuals(x, b.center, b.shape);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_mc; ++i) {
    const bool in_a = norm_a[i] >= a.radius;
    const bool in_b = norm_b[i] >= b.radius;
    hits += (in_a != in_b) ? 1 : 0;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(n_mc);
  est.probability = est.tail_mass * frac;
  est.std_error = est.tail_mass * std::sqrt(frac * (1.0 - frac) / static_cast<double>(n_mc));
  return est;
}

}  // namespace eqr
