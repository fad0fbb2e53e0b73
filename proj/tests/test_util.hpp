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

#ifndef EQR_TESTS_TEST_UTIL_HPP_
#define EQR_TESTS_TEST_UTIL_HPP_

#include <cstddef>
#include <vector>

#include "eqr/error.hpp"
#include "eqr/linalg.hpp"
#include "eqr/random.hpp"

namespace testutil
{

inline eqr::Matrix random_matrix(std::size_t rows, std::size_t cols, eqr::Rng & rng)
{
  eqr::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rng.uniform(-1.0, 1.0);
    }
  }
  return m;
}

/// M^T M + eps I.
inline eqr::Matrix random_spd_matrix(std::size_t d, eqr::Rng & rng, double eps = 0.1)
{
  const eqr::Matrix m = random_matrix(d, d, rng);
  eqr::Matrix a = m.transposed() * m;
  for (std::size_t i = 0; i < d; ++i) {
    a(i, i) += eps;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      a(j, i) = a(i, j);
    }
  }
  return a;
}

inline std::vector<double> flat(const eqr::Matrix & m)
{
  return {m.data().begin(), m.data().end()};
}

inline std::vector<double> random_vector(std::size_t d, eqr::Rng & rng, double scale = 1.0)
{
  std::vector<double> v(d);
  for (auto & x : v) {
    x = scale * rng.uniform(-1.0, 1.0);
  }
  return v;
}

template <class F>
eqr::ErrorCode error_code_of(F && f)
{
  try {
    f();
  } catch (const eqr::Error & e) {
    return e.code();
  }
  throw std::logic_error("expected an eqr::Error");
}

}  // namespace testutil

#endif  // EQR_TESTS_TEST_UTIL_HPP_
