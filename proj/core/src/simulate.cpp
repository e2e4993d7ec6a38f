#include "sysid/simulate.hpp"

#include <cmath>
#include <string>

#include "sysid/errors.hpp"

namespace sysid {

namespace {

constexpr double kStateLimit = 1e150;

Vector draw_vector(const DistributionSpec& dist, int n, Rng& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = dist.sample(rng);
  return v;
}

}  // namespace

Trajectory simulate(const LinearSystem& system, const NoiseModel& noise, int steps,
                    std::uint64_t seed, bool record) {
  system.validate();
  noise.validate();
  if (steps < 1) throw ConfigError("simulate: steps must be >= 1");

  const int n = system.n();
  Rng rng(seed);

  Vector x = draw_vector(noise.initial, n, rng);
  Vector a = noise.offset ? draw_vector(*noise.offset, n, rng) : system.a;
  Vector w = draw_vector(noise.observation, n, rng);

  Trajectory traj;
  traj.observations.resize(n, steps);
  traj.offset = a;
  if (record) {
    traj.states.resize(n, steps);
    traj.process_noise.resize(n, steps == 1 ? 0 : steps - 1);
    traj.observation_noise.resize(n, steps);
  }

  for (int t = 1; t <= steps; ++t) {
    traj.observations.col(t - 1) = x + w;
    if (record) {
      traj.states.col(t - 1) = x;
      traj.observation_noise.col(t - 1) = w;
    }
    if (t == steps) break;

    Vector f = draw_vector(noise.process, n, rng);
    if (record) traj.process_noise.col(t - 1) = f;
    x = system.A * x + a + f;
    w = draw_vector(noise.observation, n, rng);

    if (x.cwiseAbs().maxCoeff() > kStateLimit) {
      throw NumericalError("state overflow at step " + std::to_string(t + 1) +
                           ": |x| exceeds 1e150");
    }
  }
  return traj;
}

MomentEstimate empirical_diff_moment(const LinearSystem& system, const NoiseModel& noise,
                                     int k, int m, long trials, std::uint64_t seed) {
  if (k < 1 || m <= k) throw ConfigError("empirical_diff_moment: need 1 <= k < m");
  if (trials < 2) throw ConfigError("empirical_diff_moment: need at least 2 trials");

  const int n = system.n();
  Matrix sum = Matrix::Zero(n, n);
  Matrix sum_sq = Matrix::Zero(n, n);

  for (long t = 0; t < trials; ++t) {
    Trajectory traj = simulate(system, noise, m, derive_seed(seed, t));
    Vector d = traj.r(k) - traj.r(m);
    Matrix outer = d * d.transpose();
    sum += outer;
    sum_sq += outer.cwiseProduct(outer);
  }

  MomentEstimate est;
  est.trials = trials;
  est.mean = sum / static_cast<double>(trials);
  Matrix var = (sum_sq / static_cast<double>(trials) - est.mean.cwiseProduct(est.mean)) *
               (static_cast<double>(trials) / static_cast<double>(trials - 1));
  est.se = (var.cwiseMax(0.0) / static_cast<double>(trials)).cwiseSqrt();
  return est;
}

}  // namespace sysid
