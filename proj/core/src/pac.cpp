#include "sysid/pac.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

#include "sysid/errors.hpp"
#include "sysid/index_family.hpp"

namespace sysid {
namespace {

// Same expression as the bound-set f2 so the horizon step and the later
// condition checks agree bit for bit.
double f2_envelope(const NoiseVariances& var, const SpectralBounds& spectral, int k) {
  const double head = std::pow(spectral.sigma_min_a, 2 * k - 2);
  return head * spectral.sigma_min_diff * spectral.sigma_min_diff * var.initial +
         2.0 * var.observation;
}

}  // namespace

void PacRequest::validate() const {
  if (!(phi > 0.0) || !std::isfinite(phi)) throw ConfigError("pac request needs phi > 0");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw ConfigError("pac request needs delta in (0, 1)");
  }
  if (!(rho3 > 0.0) || !(rho3 < 1.0)) {
    throw ConfigError("pac request needs rho3 in (0, 1)");
  }
  if (!(eps > 0.0) || !(eps < 0.5)) {
    throw ConfigError("pac request needs eps in (0, 0.5)");
  }
  if (k < 1) throw ConfigError("pac request needs k >= 1");
}

std::string to_string(PacStatus status) {
  switch (status) {
    case PacStatus::Certified: return "certified";
    case PacStatus::Adjusted: return "adjusted";
    case PacStatus::Relaxed: return "relaxed";
    case PacStatus::Failed: return "failed";
  }
  return "failed";
}

std::vector<std::pair<double, double>> epsilon_rho_grid() {
  std::vector<std::pair<double, double>> grid;
  for (int ri = 1; ri <= 19; ++ri) {
    const double rho3 = 0.05 * ri;
    for (int ei = 0; ei < 25; ++ei) {
      grid.emplace_back(rho3, 0.01 + 0.02 * ei);
    }
  }
  return grid;
}

PacOutcome run_pac(const PacRequest& request, int n, const NoiseVariances& var,
                   const SpectralBounds& spectral, const ComplexityConfig& base_config,
                   const PacLimits& limits) {
  request.validate();
  for (double v : {var.initial, var.process, var.observation, var.offset}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("run_pac needs finite nonnegative noise variances");
    }
  }
  spectral.validate();
  base_config.validate();
  if (n < 1) throw ConfigError("run_pac needs n >= 1");
  if (limits.max_iter < 1) throw ConfigError("run_pac needs max_iter >= 1");

  const int k = request.k;
  const double f2 = f2_envelope(var, spectral, k);

  double phi = request.phi;
  double delta = request.delta;
  double rho3 = request.rho3;
  double eps = request.eps;
  bool relax_phi_next = true;

  PacOutcome outcome;
  std::optional<std::tuple<long, double, double>> confirmed_key;
  bool last_all_hold = false;

  for (int iter = 1; iter <= limits.max_iter; ++iter) {
    ComplexityConfig config = base_config;
    config.rho3 = rho3;
    config.eps = eps;

    PacIteration step;
    step.index = iter;
    step.phi = phi;
    step.delta = delta;
    step.rho3 = rho3;
    step.eps = eps;

    const long l = l_up(config, n, phi, delta, f2);
    step.l_up_value = l;
    outcome.final_l_up = l;
    last_all_hold = false;

    if (k + l - 1 > limits.max_horizon) {
      // Only a looser phi shrinks the horizon bound; fold this case into the
      // ordinary relaxation alternation.
      step.action = "horizon_budget";
      if (relax_phi_next) {
        phi *= limits.phi_relax;
      } else {
        delta = std::min(delta * limits.delta_relax, limits.delta_cap);
      }
      relax_phi_next = !relax_phi_next;
      confirmed_key.reset();
      outcome.trace.push_back(step);
      continue;
    }

    const int p = std::max(k + 1, static_cast<int>(k + l - 1));
    step.p = p;
    const BoundSet bounds = make_bound_set(k, p, n, var, spectral);
    SelectionResult selection = select(k, p, config, bounds, SelectionStrategy::Greedy,
                                       12, limits.greedy_additions);
    step.objective = selection.objective_value;

    const IndexFamily family = IndexFamily::from_tags(k, p, selection.chosen_tags);
    const ConditionInputs inputs = condition_inputs(bounds, family);
    const ConditionReport report = check_conditions(inputs, config, phi, delta,
                                                    static_cast<double>(l));
    step.report = report;
    outcome.selection = std::move(selection);
    outcome.report = report;

    if (report.all_hold()) {
      last_all_hold = true;
      const bool params_match = phi == request.phi && delta == request.delta &&
                                rho3 == request.rho3 && eps == request.eps;
      const std::tuple<long, double, double> key{l, rho3, eps};
      if (params_match) {
        step.action = "break";
        outcome.trace.push_back(step);
        outcome.status = PacStatus::Certified;
        break;
      }
      if (confirmed_key && *confirmed_key == key) {
        step.action = "confirm";
        outcome.trace.push_back(step);
        outcome.status = (phi == request.phi && delta == request.delta)
                             ? PacStatus::Certified
                             : PacStatus::Relaxed;
        break;
      }
      confirmed_key = key;
      step.action = "confirm";
      outcome.trace.push_back(step);
      continue;
    }

    // Adjustment phase: scan (rho3, eps) candidates for the concentration and
    // horizon consistency requirements at the current window, seeding the grid
    // with the closed-form eps optimum at the current rho3.
    std::vector<std::pair<double, double>> candidates;
    if (inputs.block_count > 0 && inputs.cv_norm > 0.0 && inputs.p_bound > 0.0) {
      const double a = rho3 * rho3 /
                       (static_cast<double>(inputs.block_count) * inputs.p_bound *
                        inputs.p_bound * inputs.cv_norm);
      const double b = 0.5 * config.gamma * config.gamma;
      const EpsilonRoot root = epsilon_opt(a, b, n);
      if (root.found && root.eps > 0.0) candidates.emplace_back(rho3, root.eps);
    }
    const auto grid = epsilon_rho_grid();
    candidates.insert(candidates.end(), grid.begin(), grid.end());

    bool adjusted = false;
    for (const auto& [cand_rho3, cand_eps] : candidates) {
      if (cand_rho3 == rho3 && cand_eps == eps) continue;
      ComplexityConfig cand_config = base_config;
      cand_config.rho3 = cand_rho3;
      cand_config.eps = cand_eps;
      const ConditionReport cand_report = check_conditions(
          inputs, cand_config, phi, delta, static_cast<double>(l));
      if (cand_report.c34.holds && cand_report.c41.holds) {
        rho3 = cand_rho3;
        eps = cand_eps;
        adjusted = true;
        break;
      }
    }

    if (adjusted) {
      step.action = "adjusted";
    } else if (relax_phi_next) {
      phi *= limits.phi_relax;
      relax_phi_next = false;
      step.action = "relaxed_phi";
    } else {
      delta = std::min(delta * limits.delta_relax, limits.delta_cap);
      relax_phi_next = true;
      step.action = "relaxed_delta";
    }
    confirmed_key.reset();
    outcome.trace.push_back(step);
  }

  outcome.final_phi = phi;
  outcome.final_delta = delta;
  outcome.final_rho3 = rho3;
  outcome.final_eps = eps;
  outcome.iterations = static_cast<int>(outcome.trace.size());
  if (outcome.status == PacStatus::Failed && last_all_hold) {
    // Conditions held on the last pass but the budget ended before the
    // confirming pass.
    outcome.status = (phi == request.phi && delta == request.delta)
                         ? PacStatus::Adjusted
                         : PacStatus::Relaxed;
  }
  return outcome;
}

}  // namespace sysid
