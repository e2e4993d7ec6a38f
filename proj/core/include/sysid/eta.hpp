#pragma once

#include <string>
#include <vector>

#include "sysid/index_family.hpp"
#include "sysid/trajectory.hpp"

namespace sysid {

// The stacked disturbance vector eta concatenates four segments; within each
// segment the tags run in (m asc, q asc) order:
//   Initial:    x(1), one block per tag.
//   ObsDiff:    w(m) - w(q), one block per tag.
//   ProcDiff:   f(m-1-s) - f(q-1-s) for s = 0..m-2, per tag.
//   ProcOffset: f(t) + a for t = q-m down to 1, per tag.
// Every block is an n-vector; tag (m, q) owns q + 1 blocks in total. The
// structured map whose row block for tag (m, q) is
//   [A^{m-1} - A^{q-1} | I | A^0..A^{m-2} | -A^{m-1}..-A^{q-2}]
// (each piece placed in the tag's own block-diagonal slot of its segment)
// applied to eta reproduces the stacked differences r(m) - r(q).
enum class EtaBlock { Initial, ObsDiff, ProcDiff, ProcOffset };

struct EtaBlockRef {
  EtaBlock kind;
  int m = 0;
  int q = 0;
  // ProcDiff: f(first) - f(second); ProcOffset: f(first) + a.
  int first = 0;
  int second = 0;
};

// All blocks of the layout in storage order; size equals
// family.stacked_block_count().
std::vector<EtaBlockRef> eta_blocks(const IndexFamily& family);

// Realized eta from a trajectory recorded with states and noise.
Vector build_eta(const Trajectory& traj, const IndexFamily& family);

// Human-readable dump of the layout, one line per block.
std::string eta_layout_text(const IndexFamily& family);

}  // namespace sysid
