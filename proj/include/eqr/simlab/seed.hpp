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

#ifndef EQR_SIMLAB_SEED_HPP_
#define EQR_SIMLAB_SEED_HPP_

#include <cstdint>
#include <string_view>

namespace eqr::simlab
{

/// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a over the bytes of s.
std::uint64_t fnv1a64(std::string_view s) noexcept;

/// Seed for one replication stream:
///
///   s0 = mix64(master)
///   s1 = mix64(s0 ^ fnv1a64(experiment_id))
///   s2 = mix64(s1 ^ n)
///   seed = mix64(s2 ^ replication)
///
/// The scheme is part of the output format: changing it changes every
/// records.csv, so it is frozen.
std::uint64_t derive_seed(
  std::uint64_t master, std::string_view experiment_id, std::uint64_t n,
  std::uint64_t replication) noexcept;

}  // namespace eqr::simlab

#endif  // EQR_SIMLAB_SEED_HPP_
