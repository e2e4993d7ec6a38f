#include "sysid/data_matrices.hpp"

#include <string>

#include "sysid/errors.hpp"

namespace sysid {

namespace {

void check_window(const Trajectory& traj, const IndexFamily& family, int needed) {
  family.validate();
  if (traj.steps() < needed) {
    throw ConfigError("trajectory has " + std::to_string(traj.steps()) +
                      " steps but the family window needs " + std::to_string(needed));
  }
}

}  // namespace

Matrix base_matrix(const Trajectory& traj, const IndexFamily& family) {
  check_window(traj, family, family.max_q());
  auto tags = family.tags();
  Matrix x(traj.n(), tags.size());
  for (size_t j = 0; j < tags.size(); ++j) {
    x.col(j) = traj.r(tags[j].first) - traj.r(tags[j].second);
  }
  return x;
}

Matrix shift_matrix(const Trajectory& traj, const IndexFamily& family) {
  check_window(traj, family, family.max_q() + 1);
  auto tags = family.tags();
  Matrix x(traj.n(), tags.size());
  for (size_t j = 0; j < tags.size(); ++j) {
    x.col(j) = traj.r(tags[j].first + 1) - traj.r(tags[j].second + 1);
  }
  return x;
}

PairClassification classify(const Trajectory& traj, const IndexFamily& family) {
  Matrix all = base_matrix(traj, family);
  auto tags = family.tags();

  PairClassification out;
  Matrix kept(traj.n(), 0);
  int rank = 0;
  for (size_t j = 0; j < tags.size(); ++j) {
    Matrix trial(traj.n(), kept.cols() + 1);
    trial << kept, all.col(j);
    int trial_rank = svd_rank(trial);
    if (trial_rank > rank) {
      kept = trial;
      rank = trial_rank;
      out.basis.push_back(tags[j]);
    } else {
      out.redundant.push_back(tags[j]);
    }
  }
  return out;
}

}  // namespace sysid
