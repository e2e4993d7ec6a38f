#pragma once

#include <utility>
#include <vector>

#include "sysid/index_family.hpp"
#include "sysid/trajectory.hpp"

namespace sysid {

// Column for tag (m, q) is r(m) - r(q), tags in (m asc, q asc) order.
Matrix base_matrix(const Trajectory& traj, const IndexFamily& family);

// Column for tag (m, q) is r(m+1) - r(q+1); requires the trajectory to reach
// step max_q + 1.
Matrix shift_matrix(const Trajectory& traj, const IndexFamily& family);

// Partition of a family's tags into a maximal independent set and the rest,
// judged on the realized difference vectors of one trajectory.
struct PairClassification {
  std::vector<std::pair<int, int>> basis;
  std::vector<std::pair<int, int>> redundant;
};

// Greedy scan in tag order: a tag joins the basis iff appending its column
// raises the numeric rank of the kept columns. Differences of a window [k, p]
// span at most p - k directions, so |basis| <= min(n, p - k).
PairClassification classify(const Trajectory& traj, const IndexFamily& family);

}  // namespace sysid
