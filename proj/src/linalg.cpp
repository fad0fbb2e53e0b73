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

#include "eqr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "eqr/error.hpp"

namespace eqr
{

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
: rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
: rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size())
{
  data_.reserve(rows_ * cols_);
  for (const auto & row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n)
{
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag)
{
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(i, i) = diag[i];
  }
  return m;
}

Matrix Matrix::transposed() const
{
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

double Matrix::max_abs() const noexcept
{
  double m = 0.0;
  for (double v : data_) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

Matrix operator*(const Matrix & a, const Matrix & b)
{
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product shapes disagree");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += ail * b(l, j);
      }
    }
  }
  return c;
}

Matrix operator*(double s, const Matrix & a)
{
  Matrix c = a;
  for (double & v : c.data()) {
    v *= s;
  }
  return c;
}

Vector operator*(const Matrix & a, std::span<const double> x)
{
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes disagree");
  }
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      acc += a(i, j) * x[j];
    }
    y[i] = acc;
  }
  return y;
}

Matrix operator-(const Matrix & a, const Matrix & b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix difference shapes disagree");
  }
  Matrix c = a;
  auto out = c.data();
  auto rhs = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] -= rhs[i];
  }
  return c;
}

double max_abs_diff(const Matrix & a, const Matrix & b) { return (a - b).max_abs(); }

namespace
{

void check_symmetric(const Matrix & a)
{
  if (!a.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square");
  }
  const double scale = a.max_abs();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance * scale) {
        throw Error(
          ErrorCode::NotSymmetric,
          "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ from transpose");
      }
    }
  }
}

Matrix symmetrized(const Matrix & a)
{
  Matrix s = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double m = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = m;
      s(j, i) = m;
    }
  }
  return s;
}

double off_diagonal_max(const Matrix & a)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      m = std::max(m, std::abs(a(i, j)));
    }
  }
  return m;
}

// Input must already be exactly symmetric.
EigenDecomposition jacobi_symmetric(Matrix a)
{
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);

  double diag_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag_scale += std::abs(a(i, i));
  }
  // trace(A) for SPD input; the absolute sum keeps the floor meaningful for
  // indefinite symmetric matrices too.
  const double tol = 1e-13 * (diag_scale > 0.0 ? diag_scale : a.max_abs());

  bool converged = off_diagonal_max(a) <= tol;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_diagonal_max(a) <= tol;
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });

  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) {
      out.eigenvectors(r, c) = v(r, order[c]);
    }
  }
  return out;
}

// V diag(f(lambda)) V^T, symmetrized.
Matrix spectral_map(const EigenDecomposition & e, double (*f)(double))
{
  const std::size_t n = e.eigenvalues.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = e.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += vik * e.eigenvectors(j, k);
      }
    }
  }
  return symmetrized(out);
}

}  // namespace

EigenDecomposition jacobi_eigen(const Matrix & a)
{
  check_symmetric(a);
  return jacobi_symmetric(symmetrized(a));
}

EigenDecomposition jacobi_eigen(const SpdMatrix & a) { return a.eigen(); }

SpdMatrix::SpdMatrix(const Matrix & a)
{
  if (a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  }
  check_symmetric(a);
  entries_ = symmetrized(a);
  eigen_ = jacobi_symmetric(entries_);
  const double top = eigen_.eigenvalues.front();
  const double bottom = eigen_.eigenvalues.back();
  if (!(top > 0.0) || !(bottom > kPositiveDefiniteFloor * top)) {
    throw Error(
      ErrorCode::NotPositiveDefinite,
      "smallest eigenvalue " + std::to_string(bottom) + " vs largest " + std::to_string(top));
  }
}

SpdMatrix SpdMatrix::identity(std::size_t n) { return SpdMatrix(Matrix::identity(n)); }

SpdMatrix spd_sqrt(const SpdMatrix & a)
{
  return SpdMatrix(spectral_map(a.eigen(), [](double l) { return std::sqrt(l); }));
}

SpdMatrix spd_inverse(const SpdMatrix & a)
{
  return SpdMatrix(spectral_map(a.eigen(), [](double l) { return 1.0 / l; }));
}

double determinant(const SpdMatrix & a)
{
  // Sum of logs keeps large d away from overflow.
  double log_det = 0.0;
  for (double l : a.eigen().eigenvalues) {
    log_det += std::log(l);
  }
  return std::exp(log_det);
}

SpdMatrix det_normalize(const SpdMatrix & a)
{
  double log_det = 0.0;
  for (double l : a.eigen().eigenvalues) {
    log_det += std::log(l);
  }
  const double scale = std::exp(-log_det / static_cast<double>(a.dim()));
  return SpdMatrix(scale * a.matrix());
}

double mahalanobis_norm(
  std::span<const double> x, std::span<const double> center, const SpdMatrix & shape)
{
  const std::size_t d = shape.dim();
  if (x.size() != d || center.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "point, center and shape dimensions differ");
  }
  // Project onto the eigenbasis: q = sum_k (v_k . diff)^2 / lambda_k.
  const auto & e = shape.eigen();
  double q = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double proj = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      proj += e.eigenvectors(i, k) * (x[i] - center[i]);
    }
    q += proj * proj / e.eigenvalues[k];
  }
  return std::sqrt(q);
}

double operator_norm(const Matrix & a)
{
  if (!a.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "operator norm expects a square matrix");
  }
  if (a.rows() == 0) {
    return 0.0;
  }
  const Matrix gram = a.transposed() * a;
  const auto e = jacobi_symmetric(symmetrized(gram));
  return std::sqrt(std::max(0.0, e.eigenvalues.front()));
}

double general_determinant(const Matrix & a)
{
  if (!a.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "determinant expects a square matrix");
  }
  const std::size_t n = a.rows();
  Matrix lu = a;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) {
        pivot = r;
      }
    }
    if (lu(pivot, col) == 0.0) {
      return 0.0;
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(pivot, j), lu(col, j));
      }
      det = -det;
    }
    det *= lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lu(r, col) / lu(col, col);
      for (std::size_t j = col; j < n; ++j) {
        lu(r, j) -= f * lu(col, j);
      }
    }
  }
  return det;
}

}  // namespace eqr
