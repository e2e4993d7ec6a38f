#pragma once

#include <string>

#include "sysid/numerics.hpp"

namespace sysid {

// A single simulated rollout over time steps 1..steps(). Column t-1 of each
// matrix holds the vector at time t. `states`, `process_noise`,
// `observation_noise`, and `offset` are populated only when the simulator was
// asked to record them; `offset` never round-trips through CSV.
struct Trajectory {
  Matrix observations;       // n x steps, r(t)
  Matrix states;             // n x steps or 0x0, x(t)
  Matrix process_noise;      // n x (steps-1) or 0x0, f(t)
  Matrix observation_noise;  // n x steps or 0x0, w(t)
  Vector offset;             // a used for this rollout, or empty

  int n() const { return static_cast<int>(observations.rows()); }
  int steps() const { return static_cast<int>(observations.cols()); }

  bool has_states() const { return states.size() > 0; }
  bool has_noise() const { return process_noise.size() > 0; }

  // 1-based accessors.
  Vector r(int t) const { return observations.col(t - 1); }
  Vector x(int t) const { return states.col(t - 1); }
};

// Columns: k, r_1..r_n and, when recorded, x_1..x_n, f_1..f_n, w_1..w_n.
// Values are written with 17 significant digits so a load reproduces the
// doubles exactly. f has no value at the final step; that cell is written as
// 0 and ignored on load.
void save_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory_csv(const std::string& path);

}  // namespace sysid
