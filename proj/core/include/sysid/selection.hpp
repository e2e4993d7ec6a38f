#pragma once

#include <utility>
#include <vector>

#include "sysid/bounds.hpp"
#include "sysid/complexity_config.hpp"

namespace sysid {

enum class SelectionStrategy { Exhaustive, Greedy };

struct SelectionStep {
  std::pair<int, int> added;
  double objective = 0.0;
};

struct SelectionResult {
  std::vector<std::pair<int, int>> chosen_tags;  // (m asc, q asc)
  double objective_value = 0.0;
  SelectionStrategy strategy = SelectionStrategy::Greedy;
  long evaluations = 0;
  // Greedy only: seed entry with added = (0, 0), then one entry per accepted
  // addition, each carrying the objective of the family after the step.
  std::vector<SelectionStep> trace;
};

// min{(1-2e)^2 rho3^2 / (blocks * p_bound^2 * cv_norm),
//     (1-2e) rho3 / p_bound}
// for the family induced by `tags` on the window of `bounds`. Larger is
// better: both ratios cap the failure probability of the moment
// concentration event.
double selection_objective(const std::vector<std::pair<int, int>>& tags,
                           const ComplexityConfig& config, const BoundSet& bounds);

// Exhaustive: argmax over all nonempty subsets of the pool
// {(m, q) : k <= m < q <= p}; only allowed when the pool has at most
// pool_cap tags. Greedy: start from the chain (m, m+1), repeatedly add the
// single tag with the largest objective until no addition improves or
// max_additions tags were added; ties go to the smallest (m, q).
//
// Greedy candidate scoring exploits that the covariance norm can only grow
// when a tag is added: a cheap upper bound on each candidate's objective
// prunes the exact evaluations without changing the outcome. The budget
// keeps runtime bounded on large windows where the second ratio always
// improves; the reported objective is re-evaluated from scratch on the
// chosen tags.
SelectionResult select(int k, int p, const ComplexityConfig& config,
                       const BoundSet& bounds, SelectionStrategy strategy,
                       int pool_cap = 12, int max_additions = 64);

}  // namespace sysid
