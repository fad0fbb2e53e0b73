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

#include "eqr/simlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "eqr/error.hpp"

namespace eqr::simlab
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

[[noreturn]] void config_error(const std::string & msg) { throw Error(ErrorCode::ConfigError, msg); }

void reject_unknown_keys(
  const json & obj, const std::set<std::string> & allowed, const std::string & where)
{
  if (!obj.is_object()) {
    config_error(where + " must be a JSON object");
  }
  for (const auto & item : obj.items()) {
    if (allowed.count(item.key()) == 0) {
      config_error("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double get_number(const json & obj, const std::string & key, const std::string & where)
{
  const auto it = obj.find(key);
  if (it == obj.end()) {
    config_error("missing '" + key + "' in " + where);
  }
  if (!it->is_number()) {
    config_error("'" + key + "' in " + where + " must be a number");
  }
  return it->get<double>();
}

std::size_t get_count(const json & v, const std::string & what)
{
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
    config_error(what + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

PowerRule parse_rule(const json & v, const std::string & where, bool allow_zero = false)
{
  reject_unknown_keys(v, {"c", "a"}, where);
  PowerRule r;
  r.coefficient = get_number(v, "c", where);
  r.exponent = get_number(v, "a", where);
  const bool c_ok = allow_zero ? r.coefficient >= 0.0 : r.coefficient > 0.0;
  if (!c_ok || !std::isfinite(r.coefficient) || !std::isfinite(r.exponent)) {
    config_error(where + (allow_zero ? ": c must be nonnegative" : ": c must be positive") +
                 " and both c and a finite");
  }
  return r;
}

ordered_json rule_json(const PowerRule & r)
{
  ordered_json j;
  j["c"] = r.coefficient;
  j["a"] = r.exponent;
  return j;
}

ModelSpec parse_model(const json & v)
{
  if (!v.is_object() || !v.contains("name") || !v["name"].is_string()) {
    config_error("model must be an object with a string 'name'");
  }
  ModelSpec m;
  m.name = v["name"].get<std::string>();
  if (m.name == "pareto" || m.name == "frechet") {
    reject_unknown_keys(v, {"name", "alpha"}, "model");
    m.alpha = get_number(v, "alpha", "model");
  } else if (m.name == "exponential") {
    reject_unknown_keys(v, {"name", "rate"}, "model");
    m.rate = get_number(v, "rate", "model");
  } else if (m.name == "bounded") {
    reject_unknown_keys(v, {"name", "endpoint", "gamma"}, "model");
    m.endpoint = get_number(v, "endpoint", "model");
    m.gamma = get_number(v, "gamma", "model");
  } else {
    config_error("unknown model '" + m.name + "'");
  }
  try {
    (void)m.build();
  } catch (const Error & e) {
    config_error(std::string("invalid model parameters: ") + e.what());
  }
  return m;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) noexcept
{
  switch (kind) {
    case ExperimentKind::UniConsistency: return "uni-consistency";
    case ExperimentKind::ErrorPropagation: return "error-propagation";
    case ExperimentKind::RatioBound: return "ratio-bound";
    case ExperimentKind::EllipticalConsistency: return "elliptical-consistency";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_name(std::string_view name) noexcept
{
  for (auto k : all_experiments()) {
    if (experiment_name(k) == name) {
      return k;
    }
  }
  return std::nullopt;
}

const std::vector<ExperimentKind> & all_experiments() noexcept
{
  static const std::vector<ExperimentKind> kinds{
    ExperimentKind::UniConsistency, ExperimentKind::ErrorPropagation, ExperimentKind::RatioBound,
    ExperimentKind::EllipticalConsistency};
  return kinds;
}

double PowerRule::operator()(double n) const { return coefficient * std::pow(n, exponent); }

TailModel ModelSpec::build() const
{
  if (name == "pareto") {
    return TailModel::pareto(alpha);
  }
  if (name == "frechet") {
    return TailModel::frechet(alpha);
  }
  if (name == "exponential") {
    return TailModel::exponential(rate);
  }
  if (name == "bounded") {
    return TailModel::bounded(endpoint, gamma);
  }
  throw Error(ErrorCode::ConfigError, "unknown model '" + name + "'");
}

ordered_json ModelSpec::to_json() const
{
  ordered_json j;
  j["name"] = name;
  if (name == "pareto" || name == "frechet") {
    j["alpha"] = alpha;
  } else if (name == "exponential") {
    j["rate"] = rate;
  } else if (name == "bounded") {
    j["endpoint"] = endpoint;
    j["gamma"] = gamma;
  }
  return j;
}

const std::vector<std::pair<std::string, std::string>> & model_catalog() noexcept
{
  static const std::vector<std::pair<std::string, std::string>> catalog{
    {"pareto", "alpha > 0; gamma = 1/alpha, exact tail"},
    {"frechet", "alpha > 0; gamma = 1/alpha, rho = -1"},
    {"exponential", "rate > 0; gamma = 0, exact tail"},
    {"bounded", "endpoint > 1, gamma < 0; U(t) = endpoint - t^gamma"},
  };
  return catalog;
}

std::size_t ExperimentConfig::k_at(std::size_t n) const
{
  const double raw = k_rule(static_cast<double>(n));
  // Guard exact powers (e.g. 10^4^0.5) against landing one ulp short.
  return static_cast<std::size_t>(std::floor(raw * (1.0 + 1e-12)));
}

double ExperimentConfig::p_at(std::size_t n) const { return p_rule(static_cast<double>(n)); }

double ExperimentConfig::h_at(std::size_t n) const
{
  return h_rule ? (*h_rule)(static_cast<double>(n)) : 0.0;
}

Vector ExperimentConfig::location_or_default() const
{
  return location.empty() ? Vector(dimension, 0.0) : location;
}

SpdMatrix ExperimentConfig::scatter_or_default() const
{
  if (!scatter) {
    return SpdMatrix::identity(dimension);
  }
  try {
    SpdMatrix s(*scatter);
    if (std::abs(determinant(s) - 1.0) > 1e-8) {
      config_error("scatter must have unit determinant");
    }
    return s;
  } catch (const Error & e) {
    if (e.code() == ErrorCode::ConfigError) {
      throw;
    }
    config_error(std::string("invalid scatter: ") + e.what());
  }
}

void validate_config(const ExperimentConfig & cfg)
{
  if (cfg.n_grid.empty()) {
    config_error("n_grid must not be empty");
  }
  const bool elliptical = cfg.experiment == ExperimentKind::RatioBound ||
                          cfg.experiment == ExperimentKind::EllipticalConsistency;
  const bool needs_p = cfg.experiment != ExperimentKind::RatioBound;

  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const std::size_t n = cfg.n_grid[i];
    if (i > 0 && n <= cfg.n_grid[i - 1]) {
      config_error("n_grid must be strictly increasing");
    }
    if (n < 3 || (elliptical && n <= cfg.dimension + 1)) {
      config_error("n_grid entry " + std::to_string(n) + " is too small");
    }
    const std::size_t k = cfg.k_at(n);
    if (k < 1 || k >= n) {
      config_error("k_rule(" + std::to_string(n) + ") = " + std::to_string(k) + " not in [1, n-1]");
    }
    if (needs_p) {
      const double p = cfg.p_at(n);
      const double ratio = static_cast<double>(k) / static_cast<double>(n);
      if (!(p > 0.0) || !(p < ratio)) {
        config_error("p_rule(" + std::to_string(n) + ") must lie in (0, k/n)");
      }
    }
    if (cfg.h_rule && !(cfg.h_at(n) >= 0.0 && cfg.h_at(n) < 1.0)) {
      config_error("h_rule must lie in [0, 1)");
    }
  }

  if (cfg.experiment == ExperimentKind::ErrorPropagation && !cfg.h_rule) {
    config_error("error-propagation requires h_rule");
  }
  if (cfg.experiment != ExperimentKind::ErrorPropagation && cfg.h_rule) {
    config_error("h_rule is only meaningful for error-propagation");
  }
  if (!(cfg.delta > 0.0)) {
    config_error("delta must be positive");
  }
  if (elliptical) {
    if (cfg.dimension < 1) {
      config_error("dimension must be at least 1");
    }
    if (!cfg.location.empty() && cfg.location.size() != cfg.dimension) {
      config_error("location length must equal dimension");
    }
    if (cfg.scatter && (cfg.scatter->rows() != cfg.dimension || cfg.scatter->cols() != cfg.dimension)) {
      config_error("scatter must be dimension x dimension");
    }
    (void)cfg.scatter_or_default();
  }
  if (cfg.experiment == ExperimentKind::EllipticalConsistency && cfg.mc_draws < 1000) {
    config_error("mc_draws must be at least 1000");
  }
  if (cfg.threads < 1) {
    config_error("threads must be at least 1");
  }
  const auto & t = cfg.tolerances;
  if (!(t.index_bias > 0.0) || !(t.bounded_factor > 0.0) || !(t.ratio_max > 0.0)) {
    config_error("tolerances must be positive");
  }
}

ExperimentConfig parse_config(const json & doc)
{
  reject_unknown_keys(
    doc,
    {"id", "experiment", "model", "n_grid", "k_rule", "p_rule", "h_rule", "perturbation", "delta",
     "dimension", "location", "scatter", "scatter_mode", "replications", "master_seed",
     "mc_draws", "threads", "tolerances"},
    "config");

  ExperimentConfig cfg;
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    config_error("missing string 'experiment'");
  }
  const auto kind = parse_experiment_name(doc["experiment"].get<std::string>());
  if (!kind) {
    config_error("unknown experiment '" + doc["experiment"].get<std::string>() + "'");
  }
  cfg.experiment = *kind;
  cfg.id = std::string(experiment_name(cfg.experiment));
  if (doc.contains("id")) {
    if (!doc["id"].is_string() || doc["id"].get<std::string>().empty()) {
      config_error("id must be a non-empty string");
    }
    cfg.id = doc["id"].get<std::string>();
  }

  if (!doc.contains("model")) {
    config_error("missing 'model'");
  }
  cfg.model = parse_model(doc["model"]);

  if (!doc.contains("n_grid") || !doc["n_grid"].is_array()) {
    config_error("missing array 'n_grid'");
  }
  for (const auto & v : doc["n_grid"]) {
    cfg.n_grid.push_back(get_count(v, "n_grid entries"));
  }

  if (!doc.contains("k_rule")) {
    config_error("missing 'k_rule'");
  }
  cfg.k_rule = parse_rule(doc["k_rule"], "k_rule");
  if (doc.contains("p_rule")) {
    cfg.p_rule = parse_rule(doc["p_rule"], "p_rule");
  } else if (cfg.experiment != ExperimentKind::RatioBound) {
    config_error("missing 'p_rule'");
  }
  if (doc.contains("h_rule")) {
    cfg.h_rule = parse_rule(doc["h_rule"], "h_rule", true);
  }
  if (doc.contains("perturbation")) {
    const auto & v = doc["perturbation"];
    if (v == "uniform") {
      cfg.perturbation = Perturbation::Uniform;
    } else if (v == "alternating") {
      cfg.perturbation = Perturbation::Alternating;
    } else {
      config_error("perturbation must be 'uniform' or 'alternating'");
    }
  }
  if (doc.contains("delta")) {
    cfg.delta = get_number(doc, "delta", "config");
  }
  if (doc.contains("dimension")) {
    cfg.dimension = get_count(doc["dimension"], "dimension");
  } else if (
    cfg.experiment == ExperimentKind::RatioBound ||
    cfg.experiment == ExperimentKind::EllipticalConsistency) {
    config_error("missing 'dimension'");
  }
  if (doc.contains("location")) {
    if (!doc["location"].is_array()) {
      config_error("location must be an array");
    }
    for (const auto & v : doc["location"]) {
      if (!v.is_number()) {
        config_error("location entries must be numbers");
      }
      cfg.location.push_back(v.get<double>());
    }
  }
  if (doc.contains("scatter")) {
    const auto & rows = doc["scatter"];
    if (!rows.is_array() || rows.empty()) {
      config_error("scatter must be a non-empty array of rows");
    }
    Matrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != rows.size()) {
        config_error("scatter must be square");
      }
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (!rows[i][j].is_number()) {
          config_error("scatter entries must be numbers");
        }
        m(i, j) = rows[i][j].get<double>();
      }
    }
    cfg.scatter = std::move(m);
  }
  if (doc.contains("scatter_mode")) {
    const auto & v = doc["scatter_mode"];
    if (v == "sample") {
      cfg.scatter_mode = ScatterMode::Sample;
    } else if (v == "oracle") {
      cfg.scatter_mode = ScatterMode::Oracle;
    } else {
      config_error("scatter_mode must be 'sample' or 'oracle'");
    }
  }
  if (!doc.contains("replications")) {
    config_error("missing 'replications'");
  }
  cfg.replications = get_count(doc["replications"], "replications");
  if (!doc.contains("master_seed") || !doc["master_seed"].is_number_integer() ||
      (!doc["master_seed"].is_number_unsigned() && doc["master_seed"].get<std::int64_t>() < 0)) {
    config_error("master_seed must be a nonnegative 64-bit integer");
  }
  cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
  if (doc.contains("mc_draws")) {
    cfg.mc_draws = get_count(doc["mc_draws"], "mc_draws");
  }
  if (doc.contains("threads")) {
    cfg.threads = get_count(doc["threads"], "threads");
  }
  if (doc.contains("tolerances")) {
    const auto & t = doc["tolerances"];
    reject_unknown_keys(t, {"index_bias", "bounded_factor", "ratio_max"}, "tolerances");
    if (t.contains("index_bias")) {
      cfg.tolerances.index_bias = get_number(t, "index_bias", "tolerances");
    }
    if (t.contains("bounded_factor")) {
      cfg.tolerances.bounded_factor = get_number(t, "bounded_factor", "tolerances");
    }
    if (t.contains("ratio_max")) {
      cfg.tolerances.ratio_max = get_number(t, "ratio_max", "tolerances");
    }
  }

  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error & e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

ordered_json config_to_json(const ExperimentConfig & cfg)
{
  ordered_json j;
  j["id"] = cfg.id;
  j["experiment"] = std::string(experiment_name(cfg.experiment));
  j["model"] = cfg.model.to_json();
  j["n_grid"] = cfg.n_grid;
  j["k_rule"] = rule_json(cfg.k_rule);
  if (cfg.experiment != ExperimentKind::RatioBound) {
    j["p_rule"] = rule_json(cfg.p_rule);
  }
  if (cfg.h_rule) {
    j["h_rule"] = rule_json(*cfg.h_rule);
    j["perturbation"] = cfg.perturbation == Perturbation::Uniform ? "uniform" : "alternating";
    j["delta"] = cfg.delta;
  }
  if (
    cfg.experiment == ExperimentKind::RatioBound ||
    cfg.experiment == ExperimentKind::EllipticalConsistency) {
    j["dimension"] = cfg.dimension;
    j["location"] = cfg.location_or_default();
    const SpdMatrix s = cfg.scatter_or_default();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < s.dim(); ++c) {
        row.push_back(s(i, c));
      }
      rows.push_back(row);
    }
    j["scatter"] = rows;
    j["scatter_mode"] = cfg.scatter_mode == ScatterMode::Sample ? "sample" : "oracle";
  }
  if (cfg.experiment == ExperimentKind::EllipticalConsistency) {
    j["mc_draws"] = cfg.mc_draws;
  }
  j["replications"] = cfg.replications;
  j["master_seed"] = cfg.master_seed;
  ordered_json tol;
  tol["index_bias"] = cfg.tolerances.index_bias;
  tol["bounded_factor"] = cfg.tolerances.bounded_factor;
  tol["ratio_max"] = cfg.tolerances.ratio_max;
  j["tolerances"] = tol;
  return j;
}

}  // namespace eqr::simlab
