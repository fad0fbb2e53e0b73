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

// Compiled with -mavx2 -mfma. Nothing in here may be called unless the
// dispatcher has confirmed CPU support.

#include <immintrin.h>


#include "eqr/kernels.hpp"

namespace eqr::kernels::avx2
{

namespace
{

constexpr std::size_t kLanes = 4;
// Points are processed four at a time with one register per coordinate.
constexpr std::size_t kMaxVectorDim = 16;

double horizontal_sum(__m256d v) noexcept
{
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

void quadratic_forms(
  std::span<const double> points, std::size_t dim, std::span<const double> center,
  std::span<const double> precision, std::span<double> out) noexcept
{
  const std::size_t n = out.size();
  if (dim > kMaxVectorDim) {
    scalar::quadratic_forms(points, dim, center, precision, out);
    return;
  }

  const auto stride = static_cast<long long>(dim);
  const __m256i offsets = _mm256_set_epi64x(3 * stride, 2 * stride, stride, 0);
  __m256d diff[kMaxVectorDim];

  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const double * base = points.data() + i * dim;
    for (std::size_t a = 0; a < dim; ++a) {
      const __m256d xa = _mm256_i64gather_pd(base + a, offsets, 8);
      diff[a] = _mm256_sub_pd(xa, _mm256_set1_pd(center[a]));
    }
    __m256d q = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      __m256d row = _mm256_setzero_pd();
      for (std::size_t b = 0; b < dim; ++b) {
        row = _mm256_fmadd_pd(_mm256_set1_pd(precision[a * dim + b]), diff[b], row);
      }
      q = _mm256_fmadd_pd(diff[a], row, q);
    }
    _mm256_storeu_pd(out.data() + i, q);
  }
  if (i < n) {
    scalar::quadratic_forms(
      points.subspan(i * dim), dim, center, precision, out.subspan(i));
  }
}

SpacingSums log_spacing_sums(std::span<const double> logs, double base) noexcept
{
  const std::size_t n = logs.size();
  const __m256d vbase = _mm256_set1_pd(base);
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(logs.data() + i), vbase);
    s1 = _mm256_add_pd(s1, d);
    s2 = _mm256_fmadd_pd(d, d, s2);
  }
  SpacingSums s{horizontal_sum(s1), horizontal_sum(s2)};
  for (; i < n; ++i) {
    const double d = logs[i] - base;
    s.sum += d;
    s.sum_sq += d * d;
  }
  return s;
}

void multiplicative_perturb(
  std::span<const double> values, std::span<const double> noise, std::span<double> out) noexcept
{
  const std::size_t n = out.size();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(values.data() + i);
    const __m256d e = _mm256_loadu_pd(noise.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(v, _mm256_add_pd(one, e)));
  }
  for (; i < n; ++i) {
    out[i] = values[i] * (1.0 + noise[i]);
  }
}

}  // namespace eqr::kernels::avx2
