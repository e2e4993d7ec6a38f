#include "sysid/json_io.hpp"

#include <fstream>

#include "sysid/errors.hpp"

namespace sysid {
namespace {

const json& require(const json& j, const std::string& key, const std::string& label) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError(label + " is missing required key \"" + key + "\"");
  }
  return *it;
}

double number_at(const json& j, const std::string& key, const std::string& label) {
  const json& value = require(j, key, label);
  if (!value.is_number()) {
    throw ConfigError(label + " key \"" + key + "\" must be a number");
  }
  return value.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& label) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) {
    throw ConfigError(label + " key \"" + key + "\" must be a number");
  }
  return it->get<double>();
}

int int_at(const json& j, const std::string& key, const std::string& label) {
  const json& value = require(j, key, label);
  if (!value.is_number_integer()) {
    throw ConfigError(label + " key \"" + key + "\" must be an integer");
  }
  return value.get<int>();
}

int int_or(const json& j, const std::string& key, int fallback,
           const std::string& label) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ConfigError(label + " key \"" + key + "\" must be an integer");
  }
  return it->get<int>();
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& label) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(label + " must be a nonempty array of rows");
  }
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw ConfigError(label + " rows must be nonempty arrays");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw ConfigError(label + " rows must all have the same length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw ConfigError(label + " entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          row[c].get<double>();
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json values = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) values.push_back(v(i));
  return values;
}

Vector vector_from_json(const json& j, const std::string& label) {
  if (!j.is_array()) throw ConfigError(label + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(label + " entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json to_json(const DistributionSpec& spec) {
  switch (spec.kind) {
    case DistKind::Uniform:
      return json{{"kind", "uniform"}, {"lo", spec.lo}, {"hi", spec.hi}};
    case DistKind::Gaussian:
      return json{{"kind", "gaussian"}, {"mean", spec.mean}, {"stddev", spec.stddev}};
    case DistKind::Constant:
      return json{{"kind", "constant"}, {"value", spec.value}};
  }
  return json{};
}

DistributionSpec distribution_from_json(const json& j, const std::string& label) {
  if (!j.is_object()) throw ConfigError(label + " must be an object");
  const json& kind = require(j, "kind", label);
  if (!kind.is_string()) throw ConfigError(label + " kind must be a string");
  const std::string name = kind.get<std::string>();
  if (name == "uniform") {
    return DistributionSpec::uniform(number_at(j, "lo", label),
                                     number_at(j, "hi", label));
  }
  if (name == "gaussian") {
    return DistributionSpec::gaussian(number_at(j, "mean", label),
                                      number_at(j, "stddev", label));
  }
  if (name == "constant") {
    return DistributionSpec::constant(number_at(j, "value", label));
  }
  throw ConfigError(label + " has unknown distribution kind: " + name);
}

json to_json(const NoiseModel& noise) {
  json j{{"process", to_json(noise.process)},
         {"observation", to_json(noise.observation)},
         {"initial", to_json(noise.initial)}};
  if (noise.offset) j["offset"] = to_json(*noise.offset);
  return j;
}

NoiseModel noise_model_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("noise model must be an object");
  NoiseModel noise;
  noise.process = distribution_from_json(require(j, "process", "noise model"),
                                         "noise process");
  noise.observation = distribution_from_json(
      require(j, "observation", "noise model"), "noise observation");
  noise.initial = distribution_from_json(require(j, "initial", "noise model"),
                                         "noise initial");
  if (j.contains("offset")) {
    noise.offset = distribution_from_json(j.at("offset"), "noise offset");
  }
  noise.validate();
  return noise;
}

json to_json(const LinearSystem& system) {
  return json{{"A", matrix_to_json(system.A)}, {"a", vector_to_json(system.a)}};
}

LinearSystem linear_system_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("system must be an object");
  LinearSystem system;
  system.A = matrix_from_json(require(j, "A", "system"), "system A");
  if (j.contains("a")) {
    system.a = vector_from_json(j.at("a"), "system a");
  } else {
    system.a = Vector::Zero(system.A.rows());
  }
  system.validate();
  return system;
}

json to_json(const IndexFamily& family) {
  json sets = json::object();
  for (int m = family.k; m < family.p; ++m) {
    const auto& set = family.sets[static_cast<std::size_t>(m - family.k)];
    if (set.empty()) continue;
    sets[std::to_string(m)] = set;
  }
  return json{{"k", family.k}, {"p", family.p}, {"sets", std::move(sets)}};
}

IndexFamily index_family_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("index family must be an object");
  IndexFamily family;
  family.k = int_at(j, "k", "index family");
  family.p = int_at(j, "p", "index family");
  if (family.p <= family.k) throw ConfigError("index family needs p > k");
  if (j.contains("kind")) {
    const json& kind = j.at("kind");
    if (!kind.is_string()) throw ConfigError("index family kind must be a string");
    const std::string name = kind.get<std::string>();
    if (name == "full") return IndexFamily::full(family.k, family.p);
    if (name == "chain") return IndexFamily::chain(family.k, family.p);
    throw ConfigError("unknown index family kind: " + name);
  }
  family.sets.assign(static_cast<std::size_t>(family.p - family.k), {});
  const json& sets = require(j, "sets", "index family");
  if (!sets.is_object()) throw ConfigError("index family sets must be an object");
  for (const auto& [key, value] : sets.items()) {
    int m = 0;
    try {
      m = std::stoi(key);
    } catch (...) {
      throw ConfigError("index family set key is not an integer: " + key);
    }
    if (m < family.k || m >= family.p) {
      throw ConfigError("index family set key out of range: " + key);
    }
    if (!value.is_array()) throw ConfigError("index family sets must hold arrays");
    std::vector<int> tags;
    for (const auto& entry : value) {
      if (!entry.is_number_integer()) {
        throw ConfigError("index family tags must be integers");
      }
      tags.push_back(entry.get<int>());
    }
    family.sets[static_cast<std::size_t>(m - family.k)] = std::move(tags);
  }
  family.validate();
  return family;
}

json to_json(const ComplexityConfig& config) {
  return json{{"rho3", config.rho3},
              {"eps", config.eps},
              {"gamma", config.gamma},
              {"kappa", config.kappa},
              {"c_universal", config.c_universal}};
}

ComplexityConfig complexity_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("complexity config must be an object");
  ComplexityConfig config;
  config.rho3 = number_or(j, "rho3", config.rho3, "complexity config");
  config.eps = number_or(j, "eps", config.eps, "complexity config");
  config.gamma = number_or(j, "gamma", config.gamma, "complexity config");
  config.kappa = number_or(j, "kappa", config.kappa, "complexity config");
  config.c_universal =
      number_or(j, "c_universal", config.c_universal, "complexity config");
  config.validate();
  return config;
}

json to_json(const SpectralBounds& bounds) {
  return json{{"sigma_min_a", bounds.sigma_min_a},
              {"sigma_min_diff", bounds.sigma_min_diff},
              {"sigma_max_a", bounds.sigma_max_a},
              {"power_diff_max", bounds.power_diff_max}};
}

SpectralBounds spectral_bounds_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("spectral bounds must be an object");
  SpectralBounds bounds;
  bounds.sigma_min_a = number_at(j, "sigma_min_a", "spectral bounds");
  bounds.sigma_min_diff = number_at(j, "sigma_min_diff", "spectral bounds");
  bounds.sigma_max_a = number_at(j, "sigma_max_a", "spectral bounds");
  bounds.power_diff_max = number_at(j, "power_diff_max", "spectral bounds");
  bounds.validate();
  return bounds;
}

json to_json(const ExperimentSpec& spec) {
  json j{{"name", spec.name},
         {"system", to_json(spec.system)},
         {"noise", to_json(spec.noise)},
         {"k", spec.k},
         {"estimators", spec.estimators},
         {"sweep",
          json{{"kind", to_string(spec.sweep_kind)}, {"values", spec.sweep_values}}},
         {"trials", spec.trials},
         {"master_seed", spec.master_seed}};
  if (spec.base_p > 0) j["base_p"] = spec.base_p;
  if (spec.success_phi > 0.0) j["success_phi"] = spec.success_phi;
  return j;
}

ExperimentSpec experiment_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment spec must be an object");
  ExperimentSpec spec;
  const json& name = require(j, "name", "experiment spec");
  if (!name.is_string()) throw ConfigError("experiment name must be a string");
  spec.name = name.get<std::string>();
  spec.system = linear_system_from_json(require(j, "system", "experiment spec"));
  spec.noise = noise_model_from_json(require(j, "noise", "experiment spec"));
  spec.k = int_or(j, "k", 1, "experiment spec");
  spec.base_p = int_or(j, "base_p", 0, "experiment spec");
  const json& estimators = require(j, "estimators", "experiment spec");
  if (!estimators.is_array()) throw ConfigError("estimators must be an array");
  for (const auto& entry : estimators) {
    if (!entry.is_string()) throw ConfigError("estimator names must be strings");
    spec.estimators.push_back(entry.get<std::string>());
  }
  const json& sweep = require(j, "sweep", "experiment spec");
  if (!sweep.is_object()) throw ConfigError("sweep must be an object");
  const json& kind = require(sweep, "kind", "sweep");
  if (!kind.is_string()) throw ConfigError("sweep kind must be a string");
  spec.sweep_kind = sweep_kind_from_string(kind.get<std::string>());
  const json& values = require(sweep, "values", "sweep");
  if (!values.is_array()) throw ConfigError("sweep values must be an array");
  for (const auto& entry : values) {
    if (!entry.is_number_integer()) throw ConfigError("sweep values must be integers");
    spec.sweep_values.push_back(entry.get<int>());
  }
  spec.trials = int_at(j, "trials", "experiment spec");
  const json& seed = require(j, "master_seed", "experiment spec");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw ConfigError("master_seed must be an integer");
  }
  spec.master_seed = seed.get<std::uint64_t>();
  spec.success_phi = number_or(j, "success_phi", 0.0, "experiment spec");
  spec.validate();
  return spec;
}

json to_json(const PacRequest& request) {
  return json{{"phi", request.phi},
              {"delta", request.delta},
              {"rho3", request.rho3},
              {"eps", request.eps},
              {"k", request.k}};
}

PacRequest pac_request_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("pac request must be an object");
  PacRequest request;
  request.phi = number_at(j, "phi", "pac request");
  request.delta = number_at(j, "delta", "pac request");
  request.rho3 = number_or(j, "rho3", request.rho3, "pac request");
  request.eps = number_or(j, "eps", request.eps, "pac request");
  request.k = int_or(j, "k", 1, "pac request");
  request.validate();
  return request;
}

json to_json(const PacLimits& limits) {
  return json{{"max_iter", limits.max_iter},
              {"phi_relax", limits.phi_relax},
              {"delta_relax", limits.delta_relax},
              {"delta_cap", limits.delta_cap},
              {"max_horizon", limits.max_horizon},
              {"greedy_additions", limits.greedy_additions}};
}

PacLimits pac_limits_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("pac limits must be an object");
  PacLimits limits;
  limits.max_iter = int_or(j, "max_iter", limits.max_iter, "pac limits");
  limits.phi_relax = number_or(j, "phi_relax", limits.phi_relax, "pac limits");
  limits.delta_relax = number_or(j, "delta_relax", limits.delta_relax, "pac limits");
  limits.delta_cap = number_or(j, "delta_cap", limits.delta_cap, "pac limits");
  limits.max_horizon = int_or(j, "max_horizon",
                              static_cast<int>(limits.max_horizon), "pac limits");
  limits.greedy_additions =
      int_or(j, "greedy_additions", limits.greedy_additions, "pac limits");
  return limits;
}

json to_json(const ConditionTerm& term) {
  return json{{"holds", term.holds},
              {"lhs", term.lhs},
              {"rhs", term.rhs},
              {"margin", term.margin}};
}

json to_json(const ConditionReport& report) {
  return json{{"c29", to_json(report.c29)},
              {"c30", to_json(report.c30)},
              {"c34", to_json(report.c34)},
              {"c41", to_json(report.c41)},
              {"exact_29", report.exact_29},
              {"all_hold", report.all_hold()}};
}

json to_json(const SelectionResult& result) {
  json tags = json::array();
  for (const auto& [m, q] : result.chosen_tags) tags.push_back(json::array({m, q}));
  json trace = json::array();
  for (const auto& step : result.trace) {
    trace.push_back(json{{"added", json::array({step.added.first, step.added.second})},
                         {"objective", step.objective}});
  }
  return json{{"chosen_tags", std::move(tags)},
              {"objective_value", result.objective_value},
              {"strategy", result.strategy == SelectionStrategy::Exhaustive
                               ? "exhaustive"
                               : "greedy"},
              {"evaluations", result.evaluations},
              {"trace", std::move(trace)}};
}

json to_json(const PacIteration& step) {
  return json{{"index", step.index},
              {"phi", step.phi},
              {"delta", step.delta},
              {"rho3", step.rho3},
              {"eps", step.eps},
              {"l_up", step.l_up_value},
              {"p", step.p},
              {"objective", step.objective},
              {"report", to_json(step.report)},
              {"action", step.action}};
}

json to_json(const PacOutcome& outcome) {
  json trace = json::array();
  for (const auto& step : outcome.trace) trace.push_back(to_json(step));
  return json{{"status", to_string(outcome.status)},
              {"final_phi", outcome.final_phi},
              {"final_delta", outcome.final_delta},
              {"final_rho3", outcome.final_rho3},
              {"final_eps", outcome.final_eps},
              {"final_l_up", outcome.final_l_up},
              {"selection", to_json(outcome.selection)},
              {"report", to_json(outcome.report)},
              {"iterations", outcome.iterations},
              {"trace", std::move(trace)}};
}

json to_json(const PacDemoResult& result) {
  return json{{"rho3", result.rho3},
              {"l_up", result.l_up_value},
              {"horizon_p", result.horizon_p},
              {"phi", result.phi},
              {"delta", result.delta},
              {"trials", result.trials},
              {"success_fraction", result.success_fraction},
              {"feasible_fraction", result.feasible_fraction},
              {"mean_error", result.mean_error}};
}

json to_json(const SweepPoint& point) {
  return json{{"sweep_value", point.sweep_value},
              {"estimator", point.estimator},
              {"mean_error", point.mean_error},
              {"std_error", point.std_error},
              {"feasible_fraction", point.feasible_fraction},
              {"success_fraction", point.success_fraction}};
}

json to_json(const std::vector<SweepPoint>& rows) {
  json list = json::array();
  for (const auto& row : rows) list.push_back(to_json(row));
  return list;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("invalid JSON in " + path + ": " + err.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << j.dump(2) << '\n';
  if (!out.good()) throw ConfigError("failed writing output file: " + path);
}

}  // namespace sysid
