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

#ifndef EQR_LINALG_HPP_
#define EQR_LINALG_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eqr
{

using Vector = std::vector<double>;

/// Dense row-major matrix for small dimensions.
class Matrix
{
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double & operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transposed() const;
  double max_abs() const noexcept;

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix & a, const Matrix & b);
Matrix operator*(double s, const Matrix & a);
Vector operator*(const Matrix & a, std::span<const double> x);
Matrix operator-(const Matrix & a, const Matrix & b);

/// max_ij |a_ij - b_ij|; matrices must have equal shape.
double max_abs_diff(const Matrix & a, const Matrix & b);

struct EigenDecomposition
{
  Vector eigenvalues;  // descending
  Matrix eigenvectors;  // orthonormal columns, column j pairs with eigenvalues[j]
};

/// Symmetric positive definite matrix, validated at construction.
///
/// The input is checked for symmetry (relative tolerance 1e-12), symmetrized,
/// and decomposed once; the decomposition is kept alongside the entries so
/// square roots, inverses and determinants do not repeat the sweep.
/// Positive definiteness means every eigenvalue exceeds 1e-12 times the
/// largest one.
class SpdMatrix
{
public:
  explicit SpdMatrix(const Matrix & a);

  static SpdMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return entries_.rows(); }
  const Matrix & matrix() const noexcept { return entries_; }
  const EigenDecomposition & eigen() const noexcept { return eigen_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

private:
  Matrix entries_;
  EigenDecomposition eigen_;
};

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPositiveDefiniteFloor = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi sweeps on a symmetric matrix. Throws NotSymmetric or
/// NoConvergence.
EigenDecomposition jacobi_eigen(const Matrix & a);
EigenDecomposition jacobi_eigen(const SpdMatrix & a);

SpdMatrix spd_sqrt(const SpdMatrix & a);
SpdMatrix spd_inverse(const SpdMatrix & a);
double determinant(const SpdMatrix & a);

/// a / det(a)^(1/d); the result has unit determinant.
SpdMatrix det_normalize(const SpdMatrix & a);

/// sqrt((x - center)^T shape^{-1} (x - center)).
double mahalanobis_norm(
  std::span<const double> x, std::span<const double> center, const SpdMatrix & shape);

/// Largest singular value (max |eigenvalue| for symmetric input).
double operator_norm(const Matrix & a);

/// Determinant of a general square matrix by partial-pivot LU.
double general_determinant(const Matrix & a);

}  // namespace eqr

#endif  // EQR_LINALG_HPP_
