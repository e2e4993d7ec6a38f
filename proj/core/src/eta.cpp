#include "sysid/eta.hpp"

#include <sstream>

#include "sysid/errors.hpp"

namespace sysid {

std::vector<EtaBlockRef> eta_blocks(const IndexFamily& family) {
  family.validate();
  auto tags = family.tags();
  std::vector<EtaBlockRef> blocks;
  blocks.reserve(family.stacked_block_count());

  for (auto [m, q] : tags) {
    blocks.push_back({EtaBlock::Initial, m, q, 0, 0});
  }
  for (auto [m, q] : tags) {
    blocks.push_back({EtaBlock::ObsDiff, m, q, 0, 0});
  }
  for (auto [m, q] : tags) {
    for (int s = 0; s <= m - 2; ++s) {
      blocks.push_back({EtaBlock::ProcDiff, m, q, m - 1 - s, q - 1 - s});
    }
  }
  for (auto [m, q] : tags) {
    for (int t = q - m; t >= 1; --t) {
      blocks.push_back({EtaBlock::ProcOffset, m, q, t, 0});
    }
  }
  return blocks;
}

Vector build_eta(const Trajectory& traj, const IndexFamily& family) {
  if (!traj.has_states() || !traj.has_noise()) {
    throw ConfigError("eta needs a trajectory recorded with states and noise");
  }
  if (traj.offset.size() != traj.n()) {
    throw ConfigError("eta needs the trajectory's offset vector");
  }
  if (traj.steps() < family.max_q()) {
    throw ConfigError("trajectory too short for the family window");
  }

  const int n = traj.n();
  auto blocks = eta_blocks(family);
  Vector eta(static_cast<long>(blocks.size()) * n);

  long row = 0;
  for (const auto& b : blocks) {
    switch (b.kind) {
      case EtaBlock::Initial:
        eta.segment(row, n) = traj.x(1);
        break;
      case EtaBlock::ObsDiff:
        eta.segment(row, n) =
            traj.observation_noise.col(b.m - 1) - traj.observation_noise.col(b.q - 1);
        break;
      case EtaBlock::ProcDiff:
        eta.segment(row, n) =
            traj.process_noise.col(b.first - 1) - traj.process_noise.col(b.second - 1);
        break;
      case EtaBlock::ProcOffset:
        eta.segment(row, n) = traj.process_noise.col(b.first - 1) + traj.offset;
        break;
    }
    row += n;
  }
  return eta;
}

std::string eta_layout_text(const IndexFamily& family) {
  auto blocks = eta_blocks(family);
  std::ostringstream out;
  out << "blocks " << blocks.size() << ", block size n\n";
  long index = 0;
  for (const auto& b : blocks) {
    out << index++ << " tag(" << b.m << "," << b.q << ") ";
    switch (b.kind) {
      case EtaBlock::Initial:
        out << "x(1)";
        break;
      case EtaBlock::ObsDiff:
        out << "w(" << b.m << ")-w(" << b.q << ")";
        break;
      case EtaBlock::ProcDiff:
        out << "f(" << b.first << ")-f(" << b.second << ")";
        break;
      case EtaBlock::ProcOffset:
        out << "f(" << b.first << ")+a";
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace sysid
