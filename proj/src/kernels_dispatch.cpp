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

#include <atomic>
#include <cstdlib>
#include <string>

#include "eqr/error.hpp"
#include "eqr/kernels.hpp"

namespace eqr::kernels
{

namespace
{

bool cpu_has_avx2() noexcept
{
#if defined(EQR_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() noexcept
{
  if (const char * env = std::getenv("EQR_KERNELS"); env != nullptr) {
    if (std::string(env) == "scalar") {
      return Backend::Scalar;
    }
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend> & current()
{
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept
{
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept
{
  return b == Backend::Scalar || (b == Backend::Avx2 && cpu_has_avx2());
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b)
{
  if (!backend_available(b)) {
    throw Error(
      ErrorCode::InvalidArgument, "kernel backend " + std::string(backend_name(b)) +
                                    " is not available on this build or CPU");
  }
  current().store(b, std::memory_order_relaxed);
}

void quadratic_forms(
  std::span<const double> points, std::size_t dim, std::span<const double> center,
  std::span<const double> precision, std::span<double> out)
{
  if (
    points.size() != out.size() * dim || center.size() != dim ||
    precision.size() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "quadratic_forms operand sizes disagree");
  }
#if defined(EQR_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) {
    avx2::quadratic_forms(points, dim, center, precision, out);
    return;
  }
#endif
  scalar::quadratic_forms(points, dim, center, precision, out);
}

SpacingSums log_spacing_sums(std::span<const double> logs, double base) noexcept
{
#if defined(EQR_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) {
    return avx2::log_spacing_sums(logs, base);
  }
#endif
  return scalar::log_spacing_sums(logs, base);
}

void multiplicative_perturb(
  std::span<const double> values, std::span<const double> noise, std::span<double> out)
{
  if (values.size() != out.size() || noise.size() != out.size()) {
    throw Error(ErrorCode::DimensionMismatch, "multiplicative_perturb operand sizes disagree");
  }
#if defined(EQR_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) {
    avx2::multiplicative_perturb(values, noise, out);
    return;
  }
#endif
  scalar::multiplicative_perturb(values, noise, out);
}

}  // namespace eqr::kernels
