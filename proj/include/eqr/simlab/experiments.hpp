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

#ifndef EQR_SIMLAB_EXPERIMENTS_HPP_
#define EQR_SIMLAB_EXPERIMENTS_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eqr/elliptical.hpp"
#include "eqr/random.hpp"
#include "eqr/simlab/config.hpp"
#include "eqr/simlab/summary.hpp"

namespace eqr::simlab
{

/// One verification suite. Instances are immutable after construction and
/// are shared by all worker threads.
class Experiment
{
public:
  virtual ~Experiment() = default;

  /// Payload column names, in CSV order.
  virtual const std::vector<std::string> & columns() const noexcept = 0;

  /// One replication at sample size n. Library errors propagate as
  /// eqr::Error and are recorded by the runner.
  virtual std::vector<double> replicate(std::size_t n, Rng & rng) const = 0;

  virtual SummaryReport summarize(std::span<const ReplicationRecord> records) const = 0;
};

std::unique_ptr<Experiment> make_experiment(const ExperimentConfig & cfg);

/// Oracle normalizers for the error-propagation suite at one grid point.
struct PropagationScales
{
  std::size_t k = 0;
  double p = 0.0;
  double h = 0.0;
  double a = 0.0;  // a(n/k)
  double z = 0.0;  // h U(n/k) / a(n/k)
  double q = 0.0;  // q_gamma(d_n) with the true gamma
};

PropagationScales propagation_scales(const TailModel & model, std::size_t n, std::size_t k,
                                     double p, double h);

struct Discrepancies
{
  double index = 0.0;
  double threshold = 0.0;
  double scale = 0.0;
  double quantile = 0.0;
};

/// Scaled differences between the estimators on the exact sample y and on
/// the approximated sample y_hat. A zero difference is reported as zero even
/// when the normalizer vanishes.
Discrepancies scaled_discrepancies(
  std::span<const double> y, std::span<const double> y_hat, const PropagationScales & s);

/// sqrt(n) max_{0<=j<=k} |R_hat_{n-j,n} / R_{n-j,n} - 1| for residuals
/// under the estimated and the true location/scatter.
double ratio_statistic(
  const PointSet & data, const LocationScatter & estimated, const LocationScatter & truth,
  std::size_t k);

}  // namespace eqr::simlab

#endif  // EQR_SIMLAB_EXPERIMENTS_HPP_
