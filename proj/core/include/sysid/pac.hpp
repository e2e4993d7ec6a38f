#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sysid/bounds.hpp"
#include "sysid/complexity_config.hpp"
#include "sysid/selection.hpp"

namespace sysid {

// Accuracy / confidence request the workflow tries to certify: spectral
// error below phi with probability at least 1 - delta, starting the data
// window at k.
struct PacRequest {
  double phi = 1.0;
  double delta = 0.1;
  double rho3 = 0.5;
  double eps = 0.25;
  int k = 1;

  void validate() const;
};

struct PacLimits {
  int max_iter = 24;
  double phi_relax = 1.25;    // multiplier applied when phi is loosened
  double delta_relax = 1.15;  // multiplier applied when delta is loosened
  double delta_cap = 0.995;   // delta never relaxed past this
  long max_horizon = 1024;    // largest admissible k + l_up - 1
  int greedy_additions = 24;  // selection budget per iteration
};

struct PacIteration {
  int index = 0;
  double phi = 0.0;
  double delta = 0.0;
  double rho3 = 0.0;
  double eps = 0.0;
  long l_up_value = 0;
  int p = 0;
  double objective = 0.0;
  ConditionReport report;
  // "break", "confirm", "adjusted", "relaxed_phi", "relaxed_delta",
  // "horizon_budget", "exhausted"
  std::string action;
};

enum class PacStatus { Certified, Adjusted, Relaxed, Failed };

std::string to_string(PacStatus status);

struct PacOutcome {
  PacStatus status = PacStatus::Failed;
  double final_phi = 0.0;
  double final_delta = 0.0;
  double final_rho3 = 0.0;
  double final_eps = 0.0;
  long final_l_up = 0;
  SelectionResult selection;
  ConditionReport report;
  int iterations = 0;
  std::vector<PacIteration> trace;
};

// Candidate (rho3, eps) pairs scanned when the requested pair fails: rho3
// ascending 0.05..0.95 in steps of 0.05, eps ascending 0.01..0.49 in steps
// of 0.02 inside each rho3.
std::vector<std::pair<double, double>> epsilon_rho_grid();

// Horizon / condition / adjust / relax loop. The spectral envelopes must be
// valid for every window [k, p] the workflow can reach (p up to
// limits.max_horizon): sigma_min_diff as a lower bound and power_diff_max as
// an upper bound only tighten on smaller windows, so envelopes computed at
// the largest horizon are safe everywhere.
//
// Per iteration: compute the horizon bound from the current parameters,
// greedily select a family on that window, and check the verification
// conditions. All conditions holding at the requested parameters certifies
// immediately; holding at adjusted or relaxed parameters certifies after one
// confirming pass. Otherwise a (rho3, eps) grid (seeded with the closed-form
// eps optimum) is scanned for a pair passing the concentration and horizon
// consistency checks; if none passes, phi and delta are relaxed alternately,
// phi first. Budget exhaustion yields status failed with the full trace
// rather than an exception.
PacOutcome run_pac(const PacRequest& request, int n, const NoiseVariances& var,
                   const SpectralBounds& spectral,
                   const ComplexityConfig& base_config = {},
                   const PacLimits& limits = {});

}  // namespace sysid
