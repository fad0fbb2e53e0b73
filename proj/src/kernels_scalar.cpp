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

#include "eqr/kernels.hpp"

namespace eqr::kernels::scalar
{

void quadratic_forms(
  std::span<const double> points, std::size_t dim, std::span<const double> center,
  std::span<const double> precision, std::span<double> out) noexcept
{
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double * x = points.data() + i * dim;
    double q = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double da = x[a] - center[a];
      double row = 0.0;
      for (std::size_t b = 0; b < dim; ++b) {
        row += precision[a * dim + b] * (x[b] - center[b]);
      }
      q += da * row;
    }
    out[i] = q;
  }
}

SpacingSums log_spacing_sums(std::span<const double> logs, double base) noexcept
{
  SpacingSums s;
  for (double l : logs) {
    const double d = l - base;
    s.sum += d;
    s.sum_sq += d * d;
  }
  return s;
}

void multiplicative_perturb(
  std::span<const double> values, std::span<const double> noise, std::span<double> out) noexcept
{
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = values[i] * (1.0 + noise[i]);
  }
}

}  // namespace eqr::kernels::scalar
