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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "eqr/error.hpp"
#include "eqr/linalg.hpp"
#include "eqr/random.hpp"
#include "eqr/tail_models.hpp"
#include "oracles/oracles.hpp"
#include "test_util.hpp"

using eqr::ErrorCode;
using eqr::QBranch;
using eqr::TailModel;
using testutil::error_code_of;

namespace
{

std::vector<TailModel> shipped_models()
{
  return {eqr::model_pareto(1.0),      eqr::model_pareto(5.0),         eqr::model_frechet(1.0),
          eqr::model_frechet(2.0),     eqr::model_frechet(5.0),        eqr::model_exponential(1.0),
          eqr::model_exponential(2.5), eqr::model_bounded(2.0, -0.5), eqr::model_bounded(2.0, -0.25),
          eqr::model_bounded(3.0, -1.5)};
}

double median(std::vector<double> v)
{
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(Pareto, ClosedForms)
{
  const auto m = eqr::model_pareto(1.0);
  EXPECT_EQ(m.quantile(2.0), 2.0);
  EXPECT_EQ(m.quantile(100.0), 100.0);
  EXPECT_NEAR(eqr::model_pareto(2.0).quantile(100.0), 10.0, 1e-13);
  EXPECT_NEAR(m.cdf(m.quantile(1e4)), 1.0 - 1e-4, 1e-12);
  EXPECT_EQ(m.gamma(), 1.0);
  EXPECT_EQ(m.rho(), eqr::kRhoExact);
  EXPECT_EQ(error_code_of([] { eqr::model_pareto(0.0); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(error_code_of([] { eqr::model_pareto(-1.0); }), ErrorCode::InvalidParameter);
}

TEST(Frechet, ClosedForms)
{
  const auto m = eqr::model_frechet(1.0);
  EXPECT_NEAR(m.quantile(2.0), 1.0 / std::numbers::ln2, 1e-14);
  for (double t : {2.0, 1e6}) {
    EXPECT_NEAR(m.cdf(m.quantile(t)), 1.0 - 1.0 / t, 1e-10);
  }
  const auto m2 = eqr::model_frechet(2.0);
  EXPECT_NEAR(m2.quantile(1e8) / std::sqrt(1e8), 1.0, 1e-6);
  EXPECT_EQ(m2.gamma(), 0.5);
  EXPECT_EQ(m2.rho(), -1.0);
  EXPECT_EQ(error_code_of([] { eqr::model_frechet(0.0); }), ErrorCode::InvalidParameter);
}

TEST(Exponential, ClosedForms)
{
  EXPECT_NEAR(eqr::model_exponential(1.0).quantile(std::numbers::e), 1.0, 1e-15);
  EXPECT_NEAR(eqr::model_exponential(2.0).quantile(std::exp(4.0)), 2.0, 1e-15);
  const auto m = eqr::model_exponential(1.0);
  for (double t : {10.0, 1e3, 1e8}) {
    EXPECT_NEAR(m.scale(t) / m.quantile(t), 1.0 / std::log(t), 1e-15);
  }
  EXPECT_EQ(error_code_of([] { eqr::model_exponential(-2.0); }), ErrorCode::InvalidParameter);
}

TEST(Bounded, ClosedForms)
{
  const auto m = eqr::model_bounded(2.0, -0.5);
  EXPECT_EQ(m.quantile(4.0), 1.5);
  EXPECT_NEAR(m.quantile(1e8), 2.0, 1e-4);
  EXPECT_LT(m.quantile(1e8), 2.0);
  EXPECT_NEAR(m.cdf(1.5), 0.75, 1e-15);
  EXPECT_EQ(m.right_endpoint(), 2.0);
  EXPECT_EQ(error_code_of([] { eqr::model_bounded(1.0, -0.5); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(error_code_of([] { eqr::model_bounded(2.0, 0.0); }), ErrorCode::InvalidParameter);
}

TEST(TailModelProperties, CdfAndQuantileAreInverse)
{
  for (const auto & m : shipped_models()) {
    for (double t : {2.0, 10.0, 1e3, 1e6, 1e8}) {
      EXPECT_NEAR(m.cdf(m.quantile(t)), 1.0 - 1.0 / t, 1e-10) << m.name() << " t=" << t;
    }
  }
}

TEST(TailModelProperties, QuantileNondecreasing)
{
  for (const auto & m : shipped_models()) {
    double prev = m.quantile(1.0 + 1e-9);
    for (double t = 1.01; t < 1e9; t *= 1.7) {
      const double q = m.quantile(t);
      EXPECT_GE(q, prev) << m.name();
      prev = q;
    }
    EXPECT_GT(m.quantile(1e3), 0.0);
  }
}

TEST(TailModelProperties, FirstOrderLimits)
{
  for (const auto & m : shipped_models()) {
    const double g = m.gamma();
    const double t = 1e8;
    if (g > 0.0) {
      EXPECT_NEAR(m.scale(t) / m.quantile(t), g, 1e-3) << m.name();
    } else if (g == 0.0) {
      EXPECT_LE(m.scale(t) / m.quantile(t), 0.1) << m.name();
      EXPECT_LT(m.scale(t) / m.quantile(t), m.scale(1e4) / m.quantile(1e4));
    } else {
      // a(t) = |gamma| t^gamma exactly, so a(1e8) <= 1e-3 only once gamma <= -3/8.
      EXPECT_NEAR(m.scale(t), -g * std::pow(t, g), 1e-15) << m.name();
      EXPECT_LT(m.scale(t), m.scale(1e4)) << m.name();
      if (g <= -0.375) {
        EXPECT_LE(m.scale(t), 1e-3) << m.name();
      }
    }
    if (g != 0.0) {
      const double r = (m.scale(1e8) * std::pow(1e8, -g)) / (m.scale(1e6) * std::pow(1e6, -g));
      EXPECT_GE(r, 0.99) << m.name();
      EXPECT_LE(r, 1.01) << m.name();
    }
  }
}

TEST(TailModelProperties, ScaleIsTimesDerivativeOfQuantile)
{
  // a(t) = t U'(t), checked by a central difference in log t.
  for (const auto & m : shipped_models()) {
    for (double t : {5.0, 1e3, 1e6}) {
      const double h = 1e-5;
      const double deriv = (m.quantile(t * std::exp(h)) - m.quantile(t * std::exp(-h))) / (2.0 * h);
      const double a = m.scale(t);
      // Rounding in U dominates when a(t) is tiny next to U(t).
      const double tol = 1e-7 + 1e-15 * std::abs(m.quantile(t)) / (h * a);
      EXPECT_NEAR(a / deriv, 1.0, tol) << m.name() << " t=" << t;
    }
  }
}

TEST(SecondOrder, BranchTable)
{
  using eqr::select_q_branch;
  EXPECT_EQ(select_q_branch(-1.0, -0.5, true).branch, QBranch::SecondOrderA);
  EXPECT_EQ(select_q_branch(-1.0, -0.5, true).rho_prime, -0.5);
  EXPECT_EQ(select_q_branch(-0.5, -1.0, true).branch, QBranch::ScaleRatio);
  EXPECT_EQ(select_q_branch(-0.5, -1.0, true).rho_prime, -0.5);
  EXPECT_EQ(select_q_branch(0.0, -1.0, true).branch, QBranch::ScaleRatio);
  EXPECT_EQ(select_q_branch(0.5, -1.0, false).branch, QBranch::ScaleRatio);
  EXPECT_EQ(select_q_branch(0.5, -1.0, false).rho_prime, -0.5);
  EXPECT_EQ(select_q_branch(0.5, -1.0, true).branch, QBranch::ScaledA);
  EXPECT_EQ(select_q_branch(0.5, -1.0, true).rho_prime, -1.0);
  EXPECT_EQ(select_q_branch(1.0, -1.0, true).branch, QBranch::ScaleRatio);
  EXPECT_EQ(select_q_branch(1.0, -1.0, true).rho_prime, -1.0);
  EXPECT_EQ(select_q_branch(2.0, -1.0, false).branch, QBranch::ScaledA);
  EXPECT_EQ(select_q_branch(2.0, -1.0, false).rho_prime, -1.0);
  EXPECT_EQ(error_code_of([] { select_q_branch(0.5, 0.0, true); }), ErrorCode::UnknownModel);
  EXPECT_EQ(error_code_of([] { select_q_branch(-1.0, -1.0, true); }), ErrorCode::UnknownModel);
}

TEST(SecondOrder, ExponentialScaleRatio)
{
  const auto o = eqr::second_order_oracle(eqr::model_exponential(1.0));
  EXPECT_EQ(o.branch, QBranch::ScaleRatio);
  for (double t : {10.0, 1e4}) {
    EXPECT_NEAR(o.Q_fn(t), -1.0 / std::log(t), 1e-15);
    EXPECT_EQ(o.A_fn(t), 0.0);
  }
}

TEST(SecondOrder, BoundedScaleRatio)
{
  const auto o = eqr::second_order_oracle(eqr::model_bounded(2.0, -0.5));
  EXPECT_EQ(o.branch, QBranch::ScaleRatio);
  for (double t : {4.0, 100.0, 1e6}) {
    const double expected = -0.5 * std::pow(t, -0.5) / (2.0 - std::pow(t, -0.5));
    EXPECT_NEAR(o.Q_fn(t), expected, 1e-15);
  }
}

namespace
{

// l = lim U(t) - a(t)/gamma, by Richardson extrapolation of values at
// t = 10^4 .. 10^10 assuming a correction of order t^(gamma - 1).
double richardson_l(const TailModel & m)
{
  const double g = m.gamma();
  std::vector<double> f;
  for (int e = 4; e <= 10; ++e) {
    const double t = std::pow(10.0, e);
    f.push_back(m.quantile(t) - m.scale(t) / g);
  }
  const double r = std::pow(10.0, 1.0 - g);
  std::vector<double> ext;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    ext.push_back((r * f[i + 1] - f[i]) / (r - 1.0));
  }
  return ext.back();
}

}  // namespace

TEST(SecondOrder, FrechetConstantLFrozenByExtrapolation)
{
  // gamma = 1/2: l = 0, so the scaled-A branch applies.
  const auto f2 = eqr::model_frechet(2.0);
  EXPECT_NEAR(richardson_l(f2), 0.0, 1e-6);
  const auto o2 = eqr::second_order_oracle(f2);
  EXPECT_EQ(o2.l, 0.0);
  EXPECT_EQ(o2.branch, QBranch::ScaledA);
  EXPECT_EQ(o2.rho_prime, -1.0);
  EXPECT_NEAR(o2.Q_fn(100.0), 2.0 * o2.A_fn(100.0), 1e-15);

  // gamma = 1: the correction is O(1/t) in a and U separately but the
  // difference tends to -1/2.
  const auto f1 = eqr::model_frechet(1.0);
  double raw = 0.0;
  for (double t : {1e4, 1e6, 1e8}) {
    raw = f1.quantile(t) - f1.scale(t);
  }
  EXPECT_NEAR(raw, -0.5, 1e-4);
  const auto o1 = eqr::second_order_oracle(f1);
  EXPECT_EQ(o1.l, -0.5);
  EXPECT_EQ(o1.branch, QBranch::ScaleRatio);

  const auto o5 = eqr::second_order_oracle(eqr::model_frechet(5.0));
  EXPECT_NEAR(richardson_l(eqr::model_frechet(5.0)), 0.0, 1e-6);
  EXPECT_EQ(o5.branch, QBranch::ScaledA);
}

TEST(SecondOrder, FrechetAuxiliaryMatchesFiniteRatio)
{
  // (a(tx)/a(t) x^-gamma - 1) / ((x^rho - 1)/rho) -> A(t) with rho = -1.
  for (double alpha : {0.5, 2.0, 5.0}) {
    const auto m = eqr::model_frechet(alpha);
    const auto o = eqr::second_order_oracle(m);
    const double g = m.gamma();
    const double x = 2.0;
    for (double t : {1e3, 1e4}) {
      const double lhs = (m.scale(t * x) / m.scale(t) * std::pow(x, -g) - 1.0) / (1.0 - 1.0 / x);
      EXPECT_NEAR(lhs / o.A_fn(t), 1.0, 5.0 / t) << "alpha=" << alpha << " t=" << t;
    }
  }
}

TEST(SecondOrder, ExactModelsHaveZeroA)
{
  const auto o = eqr::second_order_oracle(eqr::model_pareto(2.0));
  EXPECT_EQ(o.A_fn(10.0), 0.0);
  EXPECT_EQ(o.Q_fn(10.0), 0.0);
  EXPECT_NEAR(o.a_fn(100.0), 0.5 * 10.0, 1e-13);
}

TEST(SecondOrder, CustomModelsAreUnknown)
{
  const auto m = TailModel::custom(
    "uniform-ish", -1.0, [](double s) { return 2.0 - s; }, [](double x) { return x - 1.0; }, 1.0,
    2.0);
  EXPECT_EQ(error_code_of([&] { eqr::second_order_oracle(m); }), ErrorCode::UnknownModel);
  EXPECT_EQ(error_code_of([&] { (void)m.scale(10.0); }), ErrorCode::UnknownModel);
  EXPECT_NEAR(m.quantile(4.0), 1.75, 1e-15);
}

TEST(Sampling, DeterministicForFixedSeed)
{
  eqr::Rng a(7), b(7);
  EXPECT_EQ(eqr::sample(eqr::model_frechet(2.0), 1000, a), eqr::sample(eqr::model_frechet(2.0), 1000, b));
}

TEST(Sampling, ParetoMedianFraction)
{
  eqr::Rng rng(41);
  const auto x = eqr::sample(eqr::model_pareto(1.0), 100000, rng);
  const double frac = static_cast<double>(std::count_if(x.begin(), x.end(), [](double v) { return v <= 2.0; })) / 1e5;
  EXPECT_NEAR(frac, 0.5, 0.01);
}

TEST(Sampling, BoundedSupportRespected)
{
  eqr::Rng rng(42);
  const auto x = eqr::sample(eqr::model_bounded(2.0, -0.5), 100000, rng);
  EXPECT_LT(*std::max_element(x.begin(), x.end()), 2.0);
  EXPECT_GT(*std::min_element(x.begin(), x.end()), 1.0);
}

TEST(Sampling, KolmogorovSmirnovAgainstCdf)
{
  for (const auto & m : shipped_models()) {
    eqr::Rng rng(43);
    const auto x = eqr::sample(m, 10000, rng);
    EXPECT_LE(oracle::ks_distance(x, [&](double v) { return m.cdf(v); }), 1.63 / 100.0) << m.name();
  }
}

TEST(ConditionalTail, ParetoMedianDoublesThreshold)
{
  eqr::Rng rng(44);
  const auto x = eqr::conditional_tail_sample(eqr::model_pareto(1.0), 10.0, 100000, rng);
  EXPECT_GT(*std::min_element(x.begin(), x.end()), 10.0);
  EXPECT_NEAR(median(x) / 20.0, 1.0, 0.05);
}

TEST(ConditionalTail, BoundedStaysInsideInterval)
{
  eqr::Rng rng(45);
  const auto x = eqr::conditional_tail_sample(eqr::model_bounded(2.0, -0.5), 1.9, 100000, rng);
  for (double v : x) {
    ASSERT_GT(v, 1.9);
    ASSERT_LT(v, 2.0);
  }
}

TEST(ConditionalTail, BelowSupportMatchesUnconditionalLaw)
{
  const auto m = eqr::model_frechet(2.0);
  eqr::Rng rng(46);
  const auto x = eqr::conditional_tail_sample(m, -1.0, 10000, rng);
  EXPECT_LE(oracle::ks_distance(x, [&](double v) { return m.cdf(v); }), 1.63 / 100.0);
}

TEST(ConditionalTail, ConditionalLawMatchesTruncatedCdf)
{
  const auto m = eqr::model_frechet(5.0);
  const double thr = m.quantile(1000.0);
  const double tail = m.survival(thr);
  eqr::Rng rng(47);
  const auto x = eqr::conditional_tail_sample(m, thr, 10000, rng);
  EXPECT_LE(oracle::ks_distance(x, [&](double v) { return 1.0 - m.survival(v) / tail; }), 1.63 / 100.0);
}

TEST(ConditionalTail, ThresholdAtEndpointRejected)
{
  eqr::Rng rng(48);
  EXPECT_EQ(error_code_of([&] { eqr::conditional_tail_sample(eqr::model_bounded(2.0, -0.5), 2.0, 10, rng); }),
            ErrorCode::ThresholdAtEndpoint);
  EXPECT_EQ(error_code_of([&] { eqr::conditional_tail_sample(eqr::model_exponential(1.0), 100.0, 10, rng); }),
            ErrorCode::ThresholdAtEndpoint);
}

TEST(SphereSample, UnitNormsAndSymmetry)
{
  eqr::Rng rng(49);
  const auto s2 = eqr::sphere_sample(2, 100000, rng);
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t i = 0; i < s2.size(); ++i) {
    const auto r = s2.row(i);
    ASSERT_NEAR(std::hypot(r[0], r[1]), 1.0, 1e-12);
    m0 += r[0];
    m1 += r[1];
  }
  EXPECT_NEAR(m0 / 1e5, 0.0, 0.02);
  EXPECT_NEAR(m1 / 1e5, 0.0, 0.02);

  const auto s3 = eqr::sphere_sample(3, 100000, rng);
  std::size_t positive = 0;
  for (std::size_t i = 0; i < s3.size(); ++i) {
    const auto r = s3.row(i);
    ASSERT_NEAR(std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]), 1.0, 1e-12);
    positive += r[0] > 0.0 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(positive) / 1e5, 0.5, 0.01);

  // In 3-d the first coordinate of a uniform direction is uniform on [-1, 1].
  std::vector<double> first;
  for (std::size_t i = 0; i < 10000; ++i) {
    first.push_back(s3.row(i)[0]);
  }
  EXPECT_LE(oracle::ks_distance(first, [](double v) { return 0.5 * (v + 1.0); }), 0.0163);
}

TEST(EllipticalSample, NormsReproduceGeneratorLaw)
{
  const std::vector<double> zero{0.0, 0.0};
  const auto gen = eqr::model_frechet(5.0);
  eqr::Rng rng(50);
  const auto x = eqr::elliptical_sample(zero, eqr::SpdMatrix::identity(2), gen, 100000, rng);
  std::vector<double> norms;
  for (std::size_t i = 0; i < x.size(); ++i) {
    norms.push_back(eqr::mahalanobis_norm(x.row(i), zero, eqr::SpdMatrix::identity(2)));
  }
  EXPECT_NEAR(median(norms) / gen.quantile(2.0), 1.0, 0.03);
}

TEST(EllipticalSample, BoundedGeneratorAndDeterminism)
{
  const std::vector<double> mu{1.0, -1.0, 0.5};
  const eqr::SpdMatrix sigma(eqr::Matrix{{2.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.5}});
  const auto gen = eqr::model_bounded(2.0, -0.5);
  eqr::Rng a(51), b(51);
  const auto x = eqr::elliptical_sample(mu, sigma, gen, 5000, a);
  const auto y = eqr::elliptical_sample(mu, sigma, gen, 5000, b);
  EXPECT_TRUE(std::equal(x.data().begin(), x.data().end(), y.data().begin(), y.data().end()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_LT(eqr::mahalanobis_norm(x.row(i), mu, sigma), 2.0);
  }
}

TEST(EllipticalSample, RequiresUnitDeterminant)
{
  eqr::Rng rng(52);
  const std::vector<double> mu{0.0, 0.0};
  EXPECT_EQ(error_code_of([&] {
              eqr::elliptical_sample(mu, eqr::SpdMatrix(eqr::Matrix{{2.0, 0.0}, {0.0, 1.0}}),
                                     eqr::model_pareto(5.0), 10, rng);
            }),
            ErrorCode::DeterminantNotOne);
}
