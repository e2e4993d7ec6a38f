#include "sysid/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "sysid/errors.hpp"
#include "sysid/estimators.hpp"
#include "sysid/parallel.hpp"
#include "sysid/rng.hpp"
#include "sysid/simulate.hpp"

namespace sysid {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool known_estimator(const std::string& name) {
  return name == "proposed" || name == "naive" || name == "raw_ols";
}

// Four-state test matrix with one expanding mode; the presets scale it to
// set how fast trajectories grow.
Matrix preset_matrix(double scale) {
  Matrix m(4, 4);
  m << 1, 0, 0, 1,
       0, 1, 0, 1,
       1, 0, 1, 0,
       1, 0, 1, 1;
  return scale * m;
}

LinearSystem preset_system(double scale) {
  LinearSystem system;
  system.A = preset_matrix(scale);
  system.a = Vector::Zero(4);
  return system;
}

struct TrialCell {
  double error = 0.0;
  bool feasible = false;
};

}  // namespace

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::ObservationCount: return "observation_count";
    case SweepKind::RedundantCount: return "redundant_count";
    case SweepKind::TerminalTime: return "terminal_time";
  }
  return "observation_count";
}

SweepKind sweep_kind_from_string(const std::string& text) {
  if (text == "observation_count") return SweepKind::ObservationCount;
  if (text == "redundant_count") return SweepKind::RedundantCount;
  if (text == "terminal_time") return SweepKind::TerminalTime;
  throw ConfigError("unknown sweep kind: " + text);
}

void ExperimentSpec::validate() const {
  system.validate();
  noise.validate();
  if (k < 1) throw ConfigError("experiment needs k >= 1");
  if (estimators.empty()) throw ConfigError("experiment needs at least one estimator");
  for (const auto& name : estimators) {
    if (!known_estimator(name)) throw ConfigError("unknown estimator: " + name);
    if (std::count(estimators.begin(), estimators.end(), name) != 1) {
      throw ConfigError("duplicate estimator: " + name);
    }
  }
  if (sweep_values.empty()) throw ConfigError("experiment needs sweep values");
  for (std::size_t i = 0; i + 1 < sweep_values.size(); ++i) {
    if (sweep_values[i] >= sweep_values[i + 1]) {
      throw ConfigError("sweep values must be strictly increasing");
    }
  }
  switch (sweep_kind) {
    case SweepKind::ObservationCount:
      if (sweep_values.front() < k + 2) {
        throw ConfigError("observation counts must be at least k + 2");
      }
      break;
    case SweepKind::RedundantCount: {
      if (base_p <= k) throw ConfigError("redundant sweep needs base_p > k");
      const int extra = (base_p - k) * (base_p - k - 1) / 2;
      if (sweep_values.front() < 0 || sweep_values.back() > extra) {
        throw ConfigError("redundant counts must lie in [0, pool size]");
      }
      break;
    }
    case SweepKind::TerminalTime:
      if (sweep_values.front() < k + 1) {
        throw ConfigError("terminal times must be at least k + 1");
      }
      break;
  }
  if (trials < 1) throw ConfigError("experiment needs trials >= 1");
}

IndexFamily redundancy_family(int k, int p, int redundant_count) {
  std::vector<std::pair<int, int>> tags;
  for (int q = k + 1; q <= p; ++q) tags.emplace_back(k, q);
  int left = redundant_count;
  for (int m = k + 1; m < p && left > 0; ++m) {
    for (int q = m + 1; q <= p && left > 0; ++q) {
      tags.emplace_back(m, q);
      --left;
    }
  }
  if (left > 0) throw ConfigError("redundant count exceeds the pair pool");
  return IndexFamily::from_tags(k, p, tags);
}

std::vector<SweepPoint> run_experiment(const ExperimentSpec& spec, int threads) {
  spec.validate();

  const int points = static_cast<int>(spec.sweep_values.size());
  std::vector<IndexFamily> families;
  std::vector<int> sample_ends(points);
  families.reserve(points);
  for (int i = 0; i < points; ++i) {
    const int v = spec.sweep_values[i];
    switch (spec.sweep_kind) {
      case SweepKind::ObservationCount:
        families.push_back(IndexFamily::chain(spec.k, v - 1));
        sample_ends[i] = v;
        break;
      case SweepKind::RedundantCount:
        families.push_back(redundancy_family(spec.k, spec.base_p, v));
        sample_ends[i] = spec.base_p + 1;
        break;
      case SweepKind::TerminalTime:
        families.push_back(IndexFamily::chain(spec.k, v));
        sample_ends[i] = v + 1;
        break;
    }
  }
  const int max_steps = *std::max_element(sample_ends.begin(), sample_ends.end());
  const int est_count = static_cast<int>(spec.estimators.size());

  std::vector<std::vector<TrialCell>> cells(
      spec.trials, std::vector<TrialCell>(points * est_count));

  parallel_for(spec.trials, threads, [&](long t) {
    const Trajectory traj = simulate(spec.system, spec.noise, max_steps,
                                     derive_seed(spec.master_seed, 0, t));
    auto& row = cells[t];
    for (int i = 0; i < points; ++i) {
      for (int e = 0; e < est_count; ++e) {
        const std::string& name = spec.estimators[e];
        InferenceResult res;
        if (name == "proposed") {
          res = proposed_infer(traj, families[i]);
        } else if (name == "naive") {
          res = naive_infer(traj, spec.k, sample_ends[i]);
        } else {
          res = raw_ols_infer(traj, spec.k, sample_ends[i]);
        }
        row[i * est_count + e] = {model_error(res, spec.system.A), res.feasible};
      }
    }
  });

  std::vector<SweepPoint> rows;
  rows.reserve(points * est_count);
  for (int i = 0; i < points; ++i) {
    for (int e = 0; e < est_count; ++e) {
      SweepPoint point;
      point.sweep_value = spec.sweep_values[i];
      point.estimator = spec.estimators[e];
      long feasible = 0;
      long success = 0;
      double sum = 0.0;
      for (int t = 0; t < spec.trials; ++t) {
        const TrialCell& cell = cells[t][i * est_count + e];
        if (cell.feasible) {
          ++feasible;
          sum += cell.error;
          if (spec.success_phi > 0.0 && cell.error <= spec.success_phi) ++success;
        }
      }
      const double mean = feasible > 0 ? sum / static_cast<double>(feasible)
                                       : std::numeric_limits<double>::quiet_NaN();
      double var_sum = 0.0;
      if (feasible > 1) {
        for (int t = 0; t < spec.trials; ++t) {
          const TrialCell& cell = cells[t][i * est_count + e];
          if (cell.feasible) {
            const double d = cell.error - mean;
            var_sum += d * d;
          }
        }
      }
      point.mean_error = mean;
      point.std_error =
          feasible > 1 ? std::sqrt(var_sum / static_cast<double>(feasible - 1) /
                                   static_cast<double>(feasible))
                       : 0.0;
      point.feasible_fraction =
          static_cast<double>(feasible) / static_cast<double>(spec.trials);
      point.success_fraction =
          spec.success_phi > 0.0
              ? static_cast<double>(success) / static_cast<double>(spec.trials)
              : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(std::move(point));
    }
  }
  return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << "sweep_value,estimator,mean_error,std_error,feasible_fraction,"
         "success_fraction\n";
  for (const auto& row : rows) {
    out << row.sweep_value << ',' << row.estimator << ',' << fmt(row.mean_error)
        << ',' << fmt(row.std_error) << ',' << fmt(row.feasible_fraction) << ','
        << fmt(row.success_fraction) << '\n';
  }
  if (!out.good()) throw ConfigError("failed writing output file: " + path);
}

ExperimentSpec count_sweep_spec() {
  ExperimentSpec spec;
  spec.name = "count_sweep";
  spec.system = preset_system(0.5);
  spec.noise.process = DistributionSpec::uniform(-1.0, 1.0);
  spec.noise.observation = DistributionSpec::uniform(0.0, 1.0);
  spec.noise.initial = DistributionSpec::uniform(-1.0, 1.0);
  spec.k = 1;
  spec.estimators = {"proposed", "raw_ols"};
  spec.sweep_kind = SweepKind::ObservationCount;
  spec.sweep_values = {10, 20, 30, 40, 50, 60};
  spec.trials = 2000;
  spec.master_seed = 10007;
  return spec;
}

ExperimentSpec redundancy_sweep_spec() {
  ExperimentSpec spec;
  spec.name = "redundancy_sweep";
  spec.system = preset_system(1.0);
  spec.noise.process = DistributionSpec::uniform(-10.0, 10.0);
  spec.noise.observation = DistributionSpec::uniform(0.0, 2.0);
  spec.noise.initial = DistributionSpec::uniform(-1.0, 1.0);
  spec.k = 1;
  spec.base_p = 8;
  spec.estimators = {"proposed", "naive"};
  spec.sweep_kind = SweepKind::RedundantCount;
  spec.sweep_values = {0,  1,  2,  3,  4,  5,  6,  7,  8,  9,  10,
                       11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21};
  spec.trials = 500;
  spec.master_seed = 20011;
  return spec;
}

ExperimentSpec horizon_sweep_spec(bool small_observation_noise) {
  ExperimentSpec spec;
  spec.name = small_observation_noise ? "horizon_sweep_small" : "horizon_sweep_unit";
  spec.system = preset_system(0.44);
  spec.noise.process = DistributionSpec::uniform(-0.05, 0.05);
  spec.noise.observation = small_observation_noise
                               ? DistributionSpec::uniform(-0.05, 0.05)
                               : DistributionSpec::uniform(0.0, 1.0);
  spec.noise.initial = DistributionSpec::uniform(-0.05, 0.05);
  spec.k = 1;
  spec.estimators = {"proposed"};
  spec.sweep_kind = SweepKind::TerminalTime;
  spec.sweep_values = {20, 40, 60, 80, 100, 120, 140, 160};
  spec.trials = 400;
  spec.master_seed = 30011;
  spec.success_phi = 1.5;
  return spec;
}

void PacDemoSpec::validate() const {
  system.validate();
  noise.validate();
  config.validate();
  if (!(phi > 0.0)) throw ConfigError("demo needs phi > 0");
  if (!(delta > 0.0) || !(delta < 1.0)) throw ConfigError("demo needs delta in (0, 1)");
  if (k < 1) throw ConfigError("demo needs k >= 1");
  if (l_lo < 2 || l_hi < l_lo) throw ConfigError("demo needs 2 <= l_lo <= l_hi");
  if (trials < 1) throw ConfigError("demo needs trials >= 1");
}

PacDemoSpec horizon_demo_spec(bool small_observation_noise) {
  PacDemoSpec spec;
  spec.system = preset_system(0.44);
  spec.noise.process = DistributionSpec::uniform(-0.05, 0.05);
  spec.noise.observation = small_observation_noise
                               ? DistributionSpec::uniform(-0.05, 0.05)
                               : DistributionSpec::uniform(0.0, 1.0);
  spec.noise.initial = DistributionSpec::uniform(-0.05, 0.05);
  spec.master_seed = 40009;
  return spec;
}

PacDemoResult run_pac_demo(const PacDemoSpec& spec, int threads) {
  spec.validate();
  const int n = spec.system.n();
  const int p_max = static_cast<int>(spec.k + spec.l_hi - 1);
  const SpectralBounds spectral = exact_spectral_bounds(spec.system.A, spec.k, p_max);
  const NoiseVariances var = variances(spec.noise);
  const double head = std::pow(spectral.sigma_min_a, 2 * spec.k - 2);
  const double f2 = head * spectral.sigma_min_diff * spectral.sigma_min_diff *
                        var.initial +
                    2.0 * var.observation;

  const auto raw_at = [&](double rho3) -> double {
    ComplexityConfig config = spec.config;
    config.rho3 = rho3;
    try {
      return l_up_raw(config, n, spec.phi, spec.delta, f2);
    } catch (const NumericalError&) {
      return 0.0;  // tail target unreachable at this rho3
    }
  };

  // The horizon bound moves continuously in rho3, exploding near 0 and 1 and
  // collapsing to 1 where the tail target becomes unreachable; scan for a
  // bracket around the requested window, then bisect to its midpoint.
  const double target = 0.5 * (static_cast<double>(spec.l_lo) + spec.l_hi);
  double found_rho3 = -1.0;
  double prev_rho3 = 0.0;
  double prev_raw = -1.0;
  for (int i = 1; i < 500; ++i) {
    const double rho3 = i / 500.0;
    const double raw = raw_at(rho3);
    if (raw > 1.0 && std::ceil(raw) >= spec.l_lo && std::ceil(raw) <= spec.l_hi) {
      found_rho3 = rho3;
      break;
    }
    if (prev_raw >= 0.0 && (prev_raw - target) * (raw - target) < 0.0) {
      double lo = prev_rho3;
      double hi = rho3;
      const bool descending = prev_raw > raw;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double value = raw_at(mid);
        if ((value > target) == descending) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      found_rho3 = 0.5 * (lo + hi);
      break;
    }
    prev_rho3 = rho3;
    prev_raw = raw;
  }
  if (found_rho3 <= 0.0) {
    throw NumericalError("no rho3 reaches the requested horizon window");
  }
  const double raw = raw_at(found_rho3);
  const long l = static_cast<long>(std::ceil(raw));
  if (l < spec.l_lo || l > spec.l_hi) {
    throw NumericalError("horizon search missed the requested window");
  }

  const int p = static_cast<int>(spec.k + l - 1);
  const IndexFamily family = IndexFamily::chain(spec.k, p);
  const int steps = p + 1;

  std::vector<TrialCell> cells(spec.trials);
  parallel_for(spec.trials, threads, [&](long t) {
    const Trajectory traj = simulate(spec.system, spec.noise, steps,
                                     derive_seed(spec.master_seed, 1, t));
    const InferenceResult res = proposed_infer(traj, family);
    cells[t] = {model_error(res, spec.system.A), res.feasible};
  });

  PacDemoResult result;
  result.rho3 = found_rho3;
  result.l_up_value = l;
  result.horizon_p = p;
  result.phi = spec.phi;
  result.delta = spec.delta;
  result.trials = spec.trials;
  long feasible = 0;
  long success = 0;
  double sum = 0.0;
  for (const TrialCell& cell : cells) {
    if (cell.feasible) {
      ++feasible;
      sum += cell.error;
      if (cell.error <= spec.phi) ++success;
    }
  }
  result.feasible_fraction =
      static_cast<double>(feasible) / static_cast<double>(spec.trials);
  result.success_fraction =
      static_cast<double>(success) / static_cast<double>(spec.trials);
  result.mean_error = feasible > 0 ? sum / static_cast<double>(feasible)
                                   : std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace sysid
