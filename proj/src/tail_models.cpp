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

#include "eqr/tail_models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "eqr/error.hpp"

namespace eqr
{

namespace
{

constexpr double kMinSurvival = 0x1.0p-53;
constexpr double kMaxSurvival = 1.0 - 0x1.0p-53;

std::string label(const char * family, const char * key, double value)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s(%s=%g)", family, key, value);
  return buf;
}

double clamp_survival(double s) { return std::clamp(s, kMinSurvival, kMaxSurvival); }

void require_positive(double v, const char * what)
{
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidParameter, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

TailModel TailModel::pareto(double alpha)
{
  require_positive(alpha, "alpha");
  TailModel m;
  m.family_ = Family::Pareto;
  m.name_ = label("pareto", "alpha", alpha);
  m.param_ = alpha;
  m.gamma_ = 1.0 / alpha;
  m.rho_ = kRhoExact;
  m.support_min_ = 1.0;
  return m;
}

TailModel TailModel::frechet(double alpha)
{
  require_positive(alpha, "alpha");
  TailModel m;
  m.family_ = Family::Frechet;
  m.name_ = label("frechet", "alpha", alpha);
  m.param_ = alpha;
  m.gamma_ = 1.0 / alpha;
  m.rho_ = -1.0;
  m.support_min_ = 0.0;
  return m;
}

TailModel TailModel::exponential(double rate)
{
  require_positive(rate, "rate");
  TailModel m;
  m.family_ = Family::Exponential;
  m.name_ = label("exponential", "rate", rate);
  m.param_ = rate;
  m.gamma_ = 0.0;
  m.rho_ = kRhoExact;
  m.support_min_ = 0.0;
  return m;
}

TailModel TailModel::bounded(double endpoint, double gamma)
{
  if (!(endpoint > 1.0) || !std::isfinite(endpoint)) {
    throw Error(ErrorCode::InvalidParameter, "endpoint must exceed 1");
  }
  if (!(gamma < 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidParameter, "bounded model needs gamma < 0");
  }
  TailModel m;
  m.family_ = Family::Bounded;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "bounded(endpoint=%g,gamma=%g)", endpoint, gamma);
  m.name_ = buf;
  m.param_ = endpoint;
  m.gamma_ = gamma;
  m.rho_ = kRhoExact;
  m.support_min_ = endpoint - 1.0;
  m.right_endpoint_ = endpoint;
  return m;
}

TailModel TailModel::custom(
  std::string name, double gamma, std::function<double(double)> survival_quantile,
  std::function<double(double)> cdf, double support_min, double right_endpoint)
{
  if (!survival_quantile || !cdf) {
    throw Error(ErrorCode::InvalidParameter, "custom model needs quantile and cdf callables");
  }
  TailModel m;
  m.family_ = Family::Custom;
  m.name_ = std::move(name);
  m.gamma_ = gamma;
  m.rho_ = std::numeric_limits<double>::quiet_NaN();
  m.support_min_ = support_min;
  m.right_endpoint_ = right_endpoint;
  m.custom_ = std::make_shared<const CustomFunctions>(
    CustomFunctions{std::move(survival_quantile), std::move(cdf)});
  return m;
}

double TailModel::survival_quantile(double s) const
{
  switch (family_) {
    case Family::Pareto:
      return std::pow(s, -gamma_);
    case Family::Frechet:
      return std::pow(-std::log1p(-s), -gamma_);
    case Family::Exponential:
      return -std::log(s) / param_;
    case Family::Bounded:
      return param_ - std::pow(s, -gamma_);
    case Family::Custom:
      return custom_->survival_quantile(s);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double TailModel::quantile(double t) const
{
  if (!(t >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "quantile function needs t >= 1");
  }
  return survival_quantile(1.0 / t);
}

double TailModel::cdf(double x) const
{
  switch (family_) {
    case Family::Pareto:
      return x <= 1.0 ? 0.0 : -std::expm1(-param_ * std::log(x));
    case Family::Frechet:
      return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -param_));
    case Family::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-param_ * x);
    case Family::Bounded:
      if (x <= support_min_) {
        return 0.0;
      }
      if (x >= param_) {
        return 1.0;
      }
      return 1.0 - std::pow(param_ - x, -1.0 / gamma_);
    case Family::Custom:
      return custom_->cdf(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double TailModel::survival(double x) const
{
  switch (family_) {
    case Family::Pareto:
      return x <= 1.0 ? 1.0 : std::pow(x, -param_);
    case Family::Frechet:
      return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x, -param_));
    case Family::Exponential:
      return x <= 0.0 ? 1.0 : std::exp(-param_ * x);
    case Family::Bounded:
      if (x <= support_min_) {
        return 1.0;
      }
      if (x >= param_) {
        return 0.0;
      }
      return std::pow(param_ - x, -1.0 / gamma_);
    case Family::Custom:
      return 1.0 - custom_->cdf(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double TailModel::scale(double t) const
{
  switch (family_) {
    case Family::Pareto:
      return gamma_ * std::pow(t, gamma_);
    case Family::Frechet: {
      // t U'(t) with U(t) = v^-gamma, v = -ln(1 - 1/t).
      const double v = -std::log1p(-1.0 / t);
      return gamma_ * std::pow(v, -gamma_ - 1.0) / (t - 1.0);
    }
    case Family::Exponential:
      return 1.0 / param_;
    case Family::Bounded:
      return -gamma_ * std::pow(t, gamma_);
    case Family::Custom:
      break;
  }
  throw Error(ErrorCode::UnknownModel, name_ + " declares no scale function");
}

double TailModel::representation_threshold() const noexcept
{
  switch (family_) {
    case Family::Pareto:
    case Family::Exponential:
      return 1.0;
    case Family::Bounded:
      // density (-1/gamma) (endpoint - x)^(-1/gamma - 1)
      return gamma_ >= -1.0 ? 1.0 : 0.0;
    case Family::Frechet:
    case Family::Custom:
      break;
  }
  return 0.05;
}

BranchSelection select_q_branch(double gamma, double rho, bool l_is_zero)
{
  if (gamma == rho) {
    throw Error(ErrorCode::UnknownModel, "second-order table requires gamma != rho");
  }
  if (gamma < rho && rho <= 0.0) {
    return {QBranch::SecondOrderA, rho};
  }
  if (rho < gamma && gamma <= 0.0) {
    return {QBranch::ScaleRatio, gamma};
  }
  // gamma > 0 from here on.
  if (rho == 0.0) {
    throw Error(ErrorCode::UnknownModel, "gamma > 0 with rho = 0 leaves Q undetermined");
  }
  if (gamma == -rho) {
    return {QBranch::ScaleRatio, rho};
  }
  if (gamma < -rho) {
    return l_is_zero ? BranchSelection{QBranch::ScaledA, rho}
                     : BranchSelection{QBranch::ScaleRatio, -gamma};
  }
  return {QBranch::ScaledA, rho};
}

SecondOrderOracle second_order_oracle(const TailModel & model)
{
  const double gamma = model.gamma();
  const double rho = model.rho();
  SecondOrderOracle oracle;

  switch (model.family()) {
    case TailModel::Family::Pareto:
      // U(t) - a(t)/gamma = t^gamma - t^gamma.
      oracle.l = 0.0;
      oracle.A_fn = [](double) { return 0.0; };
      break;
    case TailModel::Family::Frechet:
      // U(t) = t^g (1 - g/(2t) + O(t^-2)) and a = t U'(t) give
      // U - a/g = -t^(g-1)/2 + ..., so l = 0 for g < 1 and -1/2 at g = 1.
      if (gamma < 1.0) {
        oracle.l = 0.0;
      } else if (gamma == 1.0) {
        oracle.l = -0.5;
      } else {
        oracle.l = std::numeric_limits<double>::infinity();
      }
      // Leading-order second-order auxiliary function for a = t U'(t).
      oracle.A_fn = [gamma](double t) { return 0.5 * (gamma - 1.0) / t; };
      break;
    case TailModel::Family::Exponential:
    case TailModel::Family::Bounded:
      oracle.A_fn = [](double) { return 0.0; };
      break;
    case TailModel::Family::Custom:
      throw Error(ErrorCode::UnknownModel, model.name() + " declares no second-order data");
  }

  const auto sel = select_q_branch(gamma, rho, oracle.l == 0.0);
  oracle.branch = sel.branch;
  oracle.rho_prime = sel.rho_prime;
  oracle.a_fn = [model](double t) { return model.scale(t); };

  const double gamma_plus = std::max(gamma, 0.0);
  switch (sel.branch) {
    case QBranch::SecondOrderA:
      oracle.Q_fn = oracle.A_fn;
      break;
    case QBranch::ScaleRatio:
      oracle.Q_fn = [model, gamma_plus](double t) {
        return gamma_plus - model.scale(t) / model.quantile(t);
      };
      break;
    case QBranch::ScaledA: {
      const double factor = std::isinf(rho) ? 1.0 : rho / (gamma + rho);
      oracle.Q_fn = [A = oracle.A_fn, factor](double t) { return factor * A(t); };
      break;
    }
  }
  return oracle;
}

std::vector<double> sample(const TailModel & model, std::size_t n, Rng & rng)
{
  std::vector<double> out(n);
  for (auto & x : out) {
    x = model.survival_quantile(clamp_survival(1.0 - rng.uniform()));
  }
  return out;
}

std::vector<double> conditional_tail_sample(
  const TailModel & model, double threshold, std::size_t n, Rng & rng)
{
  const double tail = model.survival(threshold);
  if (!(tail > 1e-15)) {
    throw Error(ErrorCode::ThresholdAtEndpoint, "no probability mass above the threshold");
  }
  std::vector<double> out(n);
  for (auto & x : out) {
    const double s = tail * clamp_survival(1.0 - rng.uniform());
    // Rounding in the closed forms can land a hair below the threshold.
    x = std::max(model.survival_quantile(s), std::nextafter(threshold, HUGE_VAL));
  }
  return out;
}

namespace
{

void unit_direction(std::span<double> out, Rng & rng)
{
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (auto & v : out) {
      v = rng.gaussian();
      norm_sq += v * v;
    }
  } while (!(norm_sq > 0.0));
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto & v : out) {
    v *= inv;
  }
}

}  // namespace

PointSet sphere_sample(std::size_t d, std::size_t n, Rng & rng)
{
  PointSet out(d);
  out.reserve(n);
  std::vector<double> s(d);
  for (std::size_t i = 0; i < n; ++i) {
    unit_direction(s, rng);
    out.push_back(s);
  }
  return out;
}

EllipticalDraw elliptical_sample_with_radii(
  std::span<const double> mu, const SpdMatrix & sigma, const TailModel & generator,
  std::size_t n, Rng & rng)
{
  const std::size_t d = sigma.dim();
  if (mu.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "location and scatter dimensions differ");
  }
  if (std::abs(determinant(sigma) - 1.0) > 1e-8) {
    throw Error(ErrorCode::DeterminantNotOne, "scatter matrix must have unit determinant");
  }
  const Matrix root = spd_sqrt(sigma).matrix();

  EllipticalDraw draw{PointSet(d), Vector(n)};
  draw.points.reserve(n);
  std::vector<double> s(d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = generator.survival_quantile(clamp_survival(1.0 - rng.uniform()));
    unit_direction(s, rng);
    for (std::size_t a = 0; a < d; ++a) {
      double acc = 0.0;
      for (std::size_t b = 0; b < d; ++b) {
        acc += root(a, b) * s[b];
      }
      x[a] = mu[a] + r * acc;
    }
    draw.radii[i] = r;
    draw.points.push_back(x);
  }
  return draw;
}

PointSet elliptical_sample(
  std::span<const double> mu, const SpdMatrix & sigma, const TailModel & generator,
  std::size_t n, Rng & rng)
{
  return elliptical_sample_with_radii(mu, sigma, generator, n, rng).points;
}

}  // namespace eqr
