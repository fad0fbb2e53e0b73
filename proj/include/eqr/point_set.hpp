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

#ifndef EQR_POINT_SET_HPP_
#define EQR_POINT_SET_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "eqr/error.hpp"

namespace eqr
{

/// n points in R^d stored contiguously, one row per point.
class PointSet
{
public:
  explicit PointSet(std::size_t dim) : dim_(dim)
  {
    if (dim == 0) {
      throw Error(ErrorCode::DimensionMismatch, "point dimension must be positive");
    }
  }

  PointSet(std::size_t dim, std::initializer_list<std::initializer_list<double>> rows)
  : PointSet(dim)
  {
    for (const auto & r : rows) {
      push_back(std::span<const double>(r.begin(), r.size()));
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size() / dim_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const double> row(std::size_t i) const
  {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }
  std::span<double> row(std::size_t i) { return std::span<double>(data_).subspan(i * dim_, dim_); }

  std::span<const double> data() const noexcept { return data_; }

  void reserve(std::size_t n) { data_.reserve(n * dim_); }

  void push_back(std::span<const double> x)
  {
    if (x.size() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
    }
    data_.insert(data_.end(), x.begin(), x.end());
  }

private:
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace eqr

#endif  // EQR_POINT_SET_HPP_
