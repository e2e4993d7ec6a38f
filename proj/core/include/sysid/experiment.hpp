#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sysid/bounds.hpp"
#include "sysid/complexity_config.hpp"
#include "sysid/index_family.hpp"
#include "sysid/linear_system.hpp"
#include "sysid/noise.hpp"

namespace sysid {

// What the sweep axis means:
//  ObservationCount: value N uses observations r(1..N); difference families
//    live on [k, N-1], regression rows on m in [k, N-1].
//  RedundantCount: fixed window [k, base_p]; value c keeps the star family
//    {(k, q)} plus the first c extra pairs in lexicographic order.
//  TerminalTime: value P sweeps the window end; observations r(1..P+1).
enum class SweepKind { ObservationCount, RedundantCount, TerminalTime };

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& text);

struct ExperimentSpec {
  std::string name;
  LinearSystem system;
  NoiseModel noise;
  int k = 1;
  int base_p = 0;  // RedundantCount only
  std::vector<std::string> estimators;  // subset of proposed, naive, raw_ols
  SweepKind sweep_kind = SweepKind::ObservationCount;
  std::vector<int> sweep_values;  // strictly increasing
  int trials = 0;
  std::uint64_t master_seed = 0;
  double success_phi = 0.0;  // > 0 adds the success column at this radius

  void validate() const;
};

struct SweepPoint {
  int sweep_value = 0;
  std::string estimator;
  double mean_error = 0.0;        // over feasible trials
  double std_error = 0.0;         // standard error of that mean
  double feasible_fraction = 0.0; // over all trials
  double success_fraction = 0.0;  // error <= success_phi over all trials; nan when disabled
};

// The star family {(k, q) : q in (k, p]} plus the first `redundant_count`
// pairs (m, q) with k < m < q <= p in lexicographic order.
IndexFamily redundancy_family(int k, int p, int redundant_count);

// One simulation per trial at the largest window; every sweep point and
// estimator reads its own prefix of the same trajectory, so comparisons are
// paired. Trial seeds derive from the master seed by trial index, making the
// output identical for every thread count.
std::vector<SweepPoint> run_experiment(const ExperimentSpec& spec, int threads = 1);

void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& rows);

// Preset: mildly expanding four-state system with offset-mean observation
// noise; differencing against raw least squares over growing counts.
ExperimentSpec count_sweep_spec();

// Preset: strongly expanding system on a fixed window; differencing with
// increasing redundancy against offset-aware least squares.
ExperimentSpec redundancy_sweep_spec();

// Preset: marginally expanding system; success rate at a fixed error radius
// over growing windows. The flag picks small zero-mean observation noise
// instead of unit-range offset noise.
ExperimentSpec horizon_sweep_spec(bool small_observation_noise);

// Horizon-bound demonstration: find rho3 whose horizon bound lands inside
// [l_lo, l_hi], then measure the empirical error at that horizon.
struct PacDemoSpec {
  LinearSystem system;
  NoiseModel noise;
  double phi = 1.5;
  double delta = 0.2811;
  int k = 1;
  long l_lo = 130;
  long l_hi = 150;
  int trials = 2000;
  std::uint64_t master_seed = 0;
  ComplexityConfig config;  // rho3 is searched, the rest is used as given

  void validate() const;
};

struct PacDemoResult {
  double rho3 = 0.0;
  long l_up_value = 0;
  int horizon_p = 0;
  double phi = 0.0;
  double delta = 0.0;
  int trials = 0;
  double success_fraction = 0.0;
  double feasible_fraction = 0.0;
  double mean_error = 0.0;
};

PacDemoSpec horizon_demo_spec(bool small_observation_noise);

PacDemoResult run_pac_demo(const PacDemoSpec& spec, int threads = 1);

}  // namespace sysid
