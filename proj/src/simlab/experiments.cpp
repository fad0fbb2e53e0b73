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

#include "eqr/simlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "eqr/error.hpp"
#include "eqr/kernels.hpp"
#include "eqr/univariate.hpp"

namespace eqr::simlab
{

namespace
{

std::string fmt(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Every n must carry at least one usable record; otherwise the run says
// nothing and must not pass.
Verdict data_verdict(std::span<const ReplicationRecord> records, std::span<const std::size_t> grid)
{
  Verdict v{"records_present", true, "every grid point has successful replications"};
  for (const std::size_t n : grid) {
    const bool any = std::any_of(
      records.begin(), records.end(), [n](const ReplicationRecord & r) { return r.n == n && r.ok(); });
    if (!any) {
      v.passed = false;
      v.detail = "NoData: no successful replications at n=" + std::to_string(n);
      return v;
    }
  }
  return v;
}

// p95 at the last grid point <= factor x p95 at the first.
Verdict bounded_verdict(const StatisticSummary & s, double factor)
{
  Verdict v;
  v.name = "bounded:" + s.name;
  const double first = s.per_n.front().p95;
  const double last = s.per_n.back().p95;
  v.passed = std::isfinite(first) && std::isfinite(last) && last <= factor * first;
  v.detail = "p95 first=" + fmt(first) + " last=" + fmt(last) + " factor=" + fmt(factor);
  return v;
}

void fill_report_counts(SummaryReport & rep, std::span<const ReplicationRecord> records)
{
  rep.total_records = records.size();
  rep.failed_records = static_cast<std::size_t>(std::count_if(
    records.begin(), records.end(), [](const ReplicationRecord & r) { return !r.ok(); }));
}

class ExperimentBase : public Experiment
{
public:
  explicit ExperimentBase(const ExperimentConfig & cfg) : cfg_(cfg), model_(cfg.model.build()) {}

  const std::vector<std::string> & columns() const noexcept override { return columns_; }

protected:
  SummaryReport start_report(std::span<const ReplicationRecord> records) const
  {
    SummaryReport rep;
    rep.experiment = cfg_.id;
    fill_report_counts(rep, records);
    return rep;
  }

  void finish_report(SummaryReport & rep, std::span<const ReplicationRecord> records) const
  {
    rep.verdicts.insert(rep.verdicts.begin(), data_verdict(records, cfg_.n_grid));
    if (cfg_.n_grid.size() < 3) {
      rep.warnings.push_back("fewer than 3 grid points: slopes not reported");
    }
  }

  ExperimentConfig cfg_;
  TailModel model_;
  std::vector<std::string> columns_;
};

class UniConsistency final : public ExperimentBase
{
public:
  explicit UniConsistency(const ExperimentConfig & cfg) : ExperimentBase(cfg)
  {
    columns_ = {"gamma_plus", "gamma_minus", "gamma_m",       "sigma_m",
                "threshold",  "quantile",    "quantile_true", "quantile_abs_rel_error"};
  }

  std::vector<double> replicate(std::size_t n, Rng & rng) const override
  {
    const std::size_t k = cfg_.k_at(n);
    const double p = cfg_.p_at(n);
    const auto y = OrderedSample::from_raw(sample(model_, n, rng));
    const TailEstimates est = moment_estimates(y, k);
    const double xq = extreme_quantile(est, QuantileQuery(k, p, n));
    const double truth = model_.survival_quantile(p);
    return {est.gamma_plus, est.gamma_minus, est.gamma_m, est.sigma_m,
            est.threshold,  xq,              truth,       std::abs(xq / truth - 1.0)};
  }

  SummaryReport summarize(std::span<const ReplicationRecord> records) const override
  {
    SummaryReport rep = start_report(records);
    rep.statistics.push_back(
      summarize_column(records, cfg_.n_grid, 2, "gamma_m", model_.gamma(), "rmse"));
    rep.statistics.push_back(
      summarize_column(records, cfg_.n_grid, 7, "quantile_abs_rel_error", std::nullopt, "median"));

    const auto & g = rep.statistics.front().per_n.back();
    const double bias = std::abs(g.median - model_.gamma());
    rep.verdicts.push_back(
      {"index_bias", std::isfinite(bias) && bias <= cfg_.tolerances.index_bias,
       "|median gamma_m - gamma| at n=" + std::to_string(g.n) + " is " + fmt(bias) +
         " (tolerance " + fmt(cfg_.tolerances.index_bias) + ")"});
    finish_report(rep, records);
    return rep;
  }
};

class ErrorPropagation final : public ExperimentBase
{
public:
  explicit ErrorPropagation(const ExperimentConfig & cfg) : ExperimentBase(cfg)
  {
    columns_ = {"z_n", "index", "order_statistic", "scale", "quantile"};
  }

  std::vector<double> replicate(std::size_t n, Rng & rng) const override
  {
    const PropagationScales s =
      propagation_scales(model_, n, cfg_.k_at(n), cfg_.p_at(n), cfg_.h_at(n));
    const std::vector<double> y = sample(model_, n, rng);
    std::vector<double> noise(n);
    for (std::size_t i = 0; i < n; ++i) {
      noise[i] = cfg_.perturbation == Perturbation::Uniform ? rng.uniform(-s.h, s.h)
                                                            : ((i % 2 == 0) ? s.h : -s.h);
    }
    std::vector<double> y_hat(n);
    kernels::multiplicative_perturb(y, noise, y_hat);
    const Discrepancies d = scaled_discrepancies(y, y_hat, s);
    return {s.z, d.index, d.threshold, d.scale, d.quantile};
  }

  SummaryReport summarize(std::span<const ReplicationRecord> records) const override
  {
    SummaryReport rep = start_report(records);
    for (std::size_t c = 1; c < columns_.size(); ++c) {
      rep.statistics.push_back(
        summarize_column(records, cfg_.n_grid, c, columns_[c], std::nullopt, "p95"));
      rep.verdicts.push_back(bounded_verdict(rep.statistics.back(), cfg_.tolerances.bounded_factor));
    }

    std::vector<ScheduleEntry> schedule;
    std::vector<double> z;
    for (const std::size_t n : cfg_.n_grid) {
      const std::size_t k = cfg_.k_at(n);
      schedule.push_back({static_cast<double>(n), static_cast<double>(k), cfg_.h_at(n)});
      z.push_back(propagation_scales(model_, n, k, cfg_.p_at(n), cfg_.h_at(n)).z);
    }
    if (z.size() >= 2 && z.back() > 0.0 && !(z.back() < z.front())) {
      rep.warnings.push_back(
        "z_n = h U(n/k)/a(n/k) does not decay along the grid (" + fmt(z.front()) + " -> " +
        fmt(z.back()) + ")");
    }
    if (schedule.size() >= 2) {
      try {
        const DecayReport dr = check_decay_conditions(model_.gamma(), schedule, cfg_.delta);
        if (!dr.decaying) {
          rep.warnings.push_back(
            "decay condition not met (" + fmt(dr.values.front()) + " -> " +
            fmt(dr.values.back()) + "): " + dr.note);
        }
      } catch (const Error & e) {
        rep.warnings.push_back(std::string("decay condition not checked: ") + e.what());
      }
    }
    finish_report(rep, records);
    return rep;
  }
};

class EllipticalBase : public ExperimentBase
{
public:
  explicit EllipticalBase(const ExperimentConfig & cfg)
  : ExperimentBase(cfg), truth_{cfg.location_or_default(), cfg.scatter_or_default(), model_}
  {
  }

protected:
  LocationScatter estimate(const PointSet & data) const
  {
    if (cfg_.scatter_mode == ScatterMode::Oracle) {
      return LocationScatter(truth_.mu, truth_.sigma);
    }
    return SampleMeanCovariance{}.estimate(data);
  }

  EllipticalModel truth_;
};

class RatioBound final : public EllipticalBase
{
public:
  explicit RatioBound(const ExperimentConfig & cfg) : EllipticalBase(cfg)
  {
    columns_ = {"statistic"};
  }

  std::vector<double> replicate(std::size_t n, Rng & rng) const override
  {
    const PointSet data = elliptical_sample(truth_.mu, truth_.sigma, model_, n, rng);
    return {ratio_statistic(data, estimate(data), LocationScatter(truth_.mu, truth_.sigma),
                            cfg_.k_at(n))};
  }

  SummaryReport summarize(std::span<const ReplicationRecord> records) const override
  {
    SummaryReport rep = start_report(records);
    rep.statistics.push_back(
      summarize_column(records, cfg_.n_grid, 0, "statistic", std::nullopt, "p95"));
    rep.verdicts.push_back(bounded_verdict(rep.statistics.back(), cfg_.tolerances.bounded_factor));
    if (model_.gamma() >= 0.25 && cfg_.scatter_mode == ScatterMode::Sample) {
      rep.warnings.push_back(
        "generator gamma >= 1/4: the sample covariance is not root-n consistent");
    }
    finish_report(rep, records);
    return rep;
  }
};

class EllipticalConsistency final : public EllipticalBase
{
public:
  explicit EllipticalConsistency(const ExperimentConfig & cfg) : EllipticalBase(cfg)
  {
    columns_ = {"radius_hat", "radius_true", "sym_diff", "sym_diff_se", "ratio"};
  }

  std::vector<double> replicate(std::size_t n, Rng & rng) const override
  {
    const std::size_t k = cfg_.k_at(n);
    const double p = cfg_.p_at(n);
    const PointSet data = elliptical_sample(truth_.mu, truth_.sigma, model_, n, rng);
    const LocationScatter ls = estimate(data);
    const QuantileRegion est = estimate_region(data, k, p, FixedLocationScatter(ls));
    const QuantileRegion tru = true_region(truth_, p);
    const SymDiffEstimate sd = sym_diff_probability(est, tru, truth_, cfg_.mc_draws, rng);
    return {est.radius, tru.radius, sd.probability, sd.std_error, sd.probability / p};
  }

  SummaryReport summarize(std::span<const ReplicationRecord> records) const override
  {
    SummaryReport rep = start_report(records);
    rep.statistics.push_back(
      summarize_column(records, cfg_.n_grid, 4, "ratio", std::nullopt, "median"));
    const auto & per_n = rep.statistics.back().per_n;
    const double last = per_n.back().median;
    rep.verdicts.push_back(
      {"final_median_ratio", std::isfinite(last) && last <= cfg_.tolerances.ratio_max,
       "median ratio at n=" + std::to_string(per_n.back().n) + " is " + fmt(last) +
         " (tolerance " + fmt(cfg_.tolerances.ratio_max) + ")"});
    bool monotone = true;
    std::string trail;
    for (std::size_t i = 0; i < per_n.size(); ++i) {
      trail += (i ? " -> " : "") + fmt(per_n[i].median);
      if (i > 0 && !(per_n[i].median <= per_n[i - 1].median)) {
        monotone = false;
      }
    }
    rep.verdicts.push_back({"median_ratio_nonincreasing", monotone, "medians " + trail});
    if (model_.gamma() <= -0.5) {
      rep.warnings.push_back("generator gamma <= -1/2: outside the range covered by the theory");
    }
    if (cfg_.p_rule.exponent != -1.0) {
      rep.warnings.push_back("p_rule is not of the form c/n: n p is not bounded");
    }
    if (model_.gamma() >= 0.25 && cfg_.scatter_mode == ScatterMode::Sample) {
      rep.warnings.push_back(
        "generator gamma >= 1/4: the sample covariance is not root-n consistent");
    }
    finish_report(rep, records);
    return rep;
  }
};

double scaled(double diff, double denom) { return diff == 0.0 ? 0.0 : diff / denom; }

}  // namespace

std::unique_ptr<Experiment> make_experiment(const ExperimentConfig & cfg)
{
  switch (cfg.experiment) {
    case ExperimentKind::UniConsistency: return std::make_unique<UniConsistency>(cfg);
    case ExperimentKind::ErrorPropagation: return std::make_unique<ErrorPropagation>(cfg);
    case ExperimentKind::RatioBound: return std::make_unique<RatioBound>(cfg);
    case ExperimentKind::EllipticalConsistency: return std::make_unique<EllipticalConsistency>(cfg);
  }
  throw Error(ErrorCode::ConfigError, "unknown experiment");
}

PropagationScales propagation_scales(
  const TailModel & model, std::size_t n, std::size_t k, double p, double h)
{
  PropagationScales s;
  s.k = k;
  s.p = p;
  s.h = h;
  const double t = static_cast<double>(n) / static_cast<double>(k);
  s.a = model.scale(t);
  s.z = h * model.quantile(t) / s.a;
  s.q = q_gamma(model.gamma(), QuantileQuery(k, p, n).extrapolation_ratio());
  return s;
}

Discrepancies scaled_discrepancies(
  std::span<const double> y, std::span<const double> y_hat, const PropagationScales & s)
{
  if (y.size() != y_hat.size()) {
    throw Error(ErrorCode::DimensionMismatch, "exact and approximated samples differ in size");
  }
  const std::size_t n = y.size();
  const auto oy = OrderedSample::from_raw(y);
  const auto oh = OrderedSample::from_raw(y_hat);
  const TailEstimates ey = moment_estimates(oy, s.k);
  const TailEstimates eh = moment_estimates(oh, s.k);
  const QuantileQuery query(s.k, s.p, n);
  const double xy = extreme_quantile(ey, query);
  const double xh = extreme_quantile(eh, query);

  Discrepancies d;
  d.index = scaled(std::abs(eh.gamma_m - ey.gamma_m), s.z);
  d.threshold = scaled(std::abs(eh.threshold - ey.threshold), s.a * s.z);
  d.scale = scaled(std::abs(eh.sigma_m - ey.sigma_m), s.a * s.z);
  d.quantile = scaled(std::abs(xh - xy), s.a * s.q * s.z);
  return d;
}

double ratio_statistic(
  const PointSet & data, const LocationScatter & estimated, const LocationScatter & truth,
  std::size_t k)
{
  const std::size_t n = data.size();
  if (k >= n) {
    throw Error(ErrorCode::InvalidK, "k must be below n");
  }
  std::vector<double> r_hat = residuals(data, estimated);
  std::vector<double> r = residuals(data, truth);
  std::sort(r_hat.begin(), r_hat.end());
  std::sort(r.begin(), r.end());
  double worst = 0.0;
  for (std::size_t j = 0; j <= k; ++j) {
    const std::size_t idx = n - 1 - j;
    worst = std::max(worst, std::abs(r_hat[idx] / r[idx] - 1.0));
  }
  return std::sqrt(static_cast<double>(n)) * worst;
}

}  // namespace eqr::simlab
