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

// Reference computations that share no code with the library: numerical
// quadrature, direct long-double formulas, Gaussian elimination.

#ifndef EQR_TESTS_ORACLES_HPP_
#define EQR_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle
{

/// integral_1^t s^(g-1) ln s ds, evaluated as integral_0^ln t u e^(g u) du
/// by adaptive Gauss-Kronrod.
inline double q_gamma_quadrature(double g, double t)
{
  const double upper = std::log(t);
  if (upper == 0.0) {
    return 0.0;
  }
  auto f = [g](double u) { return u * std::exp(g * u); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 20, 1e-15);
}

struct Moment
{
  long double m1;
  long double m2;
  long double gamma_plus;
  long double gamma_minus;
  long double gamma_m;
  long double sigma_m;
  long double threshold;
};

/// Moment estimator straight from the definitions, in long double.
inline Moment moment_estimator(std::vector<double> y, std::size_t k)
{
  std::sort(y.begin(), y.end());
  const std::size_t n = y.size();
  const long double base = std::log(static_cast<long double>(y[n - k - 1]));
  long double s1 = 0.0L;
  long double s2 = 0.0L;
  for (std::size_t j = 0; j < k; ++j) {
    const long double d = std::log(static_cast<long double>(y[n - 1 - j])) - base;
    s1 += d;
    s2 += d * d;
  }
  Moment m{};
  m.m1 = s1 / static_cast<long double>(k);
  m.m2 = s2 / static_cast<long double>(k);
  m.gamma_plus = m.m1;
  m.gamma_minus = 1.0L - 0.5L / (1.0L - m.m1 * m.m1 / m.m2);
  m.gamma_m = m.gamma_plus + m.gamma_minus;
  m.threshold = y[n - k - 1];
  m.sigma_m = m.threshold * m.m1 * (1.0L - m.gamma_minus);
  return m;
}

inline long double extreme_quantile(const Moment & m, std::size_t k, double p, std::size_t n)
{
  const long double d = static_cast<long double>(k) / (static_cast<long double>(n) * p);
  return m.threshold + m.sigma_m * (std::pow(d, m.gamma_m) - 1.0L) / m.gamma_m;
}

/// Solves a x = b (row-major square a) by Gaussian elimination with
/// partial pivoting.
inline std::vector<double> solve(std::vector<double> a, std::vector<double> b)
{
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) {
        piv = r;
      }
    }
    if (a[piv * n + c] == 0.0) {
      throw std::runtime_error("singular system");
    }
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[c * n + j], a[piv * n + j]);
      }
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) {
        a[r * n + j] -= f * a[c * n + j];
      }
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      s -= a[i * n + j] * x[j];
    }
    x[i] = s / a[i * n + i];
  }
  return x;
}

/// sqrt((x - c)^T S^-1 (x - c)) via a linear solve.
inline double mahalanobis(
  const std::vector<double> & x, const std::vector<double> & c, const std::vector<double> & s)
{
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    d[i] = x[i] - c[i];
  }
  const auto y = solve(s, d);
  double q = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q += d[i] * y[i];
  }
  return std::sqrt(q);
}

/// Determinant by elimination.
inline double determinant(std::vector<double> a, std::size_t n)
{
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) {
        piv = r;
      }
    }
    if (a[piv * n + c] == 0.0) {
      return 0.0;
    }
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[c * n + j], a[piv * n + j]);
      }
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) {
        a[r * n + j] -= f * a[c * n + j];
      }
    }
  }
  return det;
}

/// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
template <class Cdf>
double ks_distance(std::vector<double> x, Cdf cdf)
{
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    worst = std::max({worst, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return worst;
}

}  // namespace oracle

#endif  // EQR_TESTS_ORACLES_HPP_
