#pragma once

#include <cstdint>

#include "sysid/linear_system.hpp"
#include "sysid/noise.hpp"
#include "sysid/trajectory.hpp"

namespace sysid {

// Rolls out x(t+1) = A x(t) + a + f(t), r(t) = x(t) + w(t) for t = 1..steps.
// Draw order is fixed: x(1), then a when the noise model resamples it, then
// w(1), then per step f(t), w(t+1), each vector coordinate-major. The offset
// actually used is always stored on the trajectory; states and noises are
// stored only when `record` is set.
//
// Throws NumericalError when a state coordinate exceeds 1e150 in magnitude,
// naming the step that overflowed.
Trajectory simulate(const LinearSystem& system, const NoiseModel& noise, int steps,
                    std::uint64_t seed, bool record = false);

struct MomentEstimate {
  Matrix mean;  // per-entry Monte Carlo mean
  Matrix se;    // per-entry standard error of that mean
  long trials = 0;
};

// Monte Carlo estimate of E[(r(k) - r(m)) (r(k) - r(m))^T], k < m, across
// independent rollouts. Trial t uses derive_seed(seed, t), so the estimate is
// independent of batching.
MomentEstimate empirical_diff_moment(const LinearSystem& system, const NoiseModel& noise,
                                     int k, int m, long trials, std::uint64_t seed);

}  // namespace sysid
