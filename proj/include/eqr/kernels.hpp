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

#ifndef EQR_KERNELS_HPP_
#define EQR_KERNELS_HPP_

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2/FMA version selected at runtime. The two agree to
// rounding (see tests/test_kernels.cpp); the scalar version is the contract.
//
// Backend selection happens once on first use. Setting EQR_KERNELS=scalar in
// the environment pins the scalar path; force_backend() does the same from
// code.

#include <cstddef>
#include <span>
#include <string_view>

namespace eqr::kernels
{

enum class Backend
{
  Scalar,
  Avx2,
};

std::string_view backend_name(Backend b) noexcept;

/// True when the backend was compiled in and the CPU supports it.
bool backend_available(Backend b) noexcept;

Backend active_backend() noexcept;

/// Throws eqr::Error(InvalidArgument) if the backend is unavailable.
void force_backend(Backend b);

struct SpacingSums
{
  double sum = 0.0;
  double sum_sq = 0.0;
};

// out[i] = (x_i - c)^T P (x_i - c) for the row-major n x dim point block.
void quadratic_forms(
  std::span<const double> points, std::size_t dim, std::span<const double> center,
  std::span<const double> precision, std::span<double> out);

// Sums of (logs[j] - base) and (logs[j] - base)^2.
SpacingSums log_spacing_sums(std::span<const double> logs, double base) noexcept;

// out[i] = values[i] * (1 + noise[i]).
void multiplicative_perturb(
  std::span<const double> values, std::span<const double> noise, std::span<double> out);

namespace scalar
{
void quadratic_forms(
  std::span<const double> points, std::size_t dim, std::span<const double> center,
  std::span<const double> precision, std::span<double> out) noexcept;
SpacingSums log_spacing_sums(std::span<const double> logs, double base) noexcept;
void multiplicative_perturb(
  std::span<const double> values, std::span<const double> noise, std::span<double> out) noexcept;
}  // namespace scalar

#if defined(EQR_HAVE_AVX2_KERNELS)
namespace avx2
{
void quadratic_forms(
  std::span<const double> points, std::size_t dim, std::span<const double> center,
  std::span<const double> precision, std::span<double> out) noexcept;
SpacingSums log_spacing_sums(std::span<const double> logs, double base) noexcept;
void multiplicative_perturb(
  std::span<const double> values, std::span<const double> noise, std::span<double> out) noexcept;
}  // namespace avx2
#endif

}  // namespace eqr::kernels

#endif  // EQR_KERNELS_HPP_
