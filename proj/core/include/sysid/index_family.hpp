#pragma once

#include <utility>
#include <vector>

#include "sysid/numerics.hpp"

namespace sysid {

// Collection of difference tags over an observation window [k, p]: for each
// m in [k, p-1], T_m lists the partners q in (m, p] whose difference
// r(m) - r(q) participates in the data matrices. Tags enumerate in (m asc,
// q asc) order everywhere; that order fixes matrix columns and stacked-block
// layouts across the library.
struct IndexFamily {
  int k = 1;
  int p = 2;
  // sets[m - k] = T_m, sorted strictly ascending.
  std::vector<std::vector<int>> sets;

  static IndexFamily full(int k, int p);   // T_m = {m+1, ..., p}
  static IndexFamily chain(int k, int p);  // T_m = {m+1}
  static IndexFamily from_tags(int k, int p, const std::vector<std::pair<int, int>>& tags);

  // Throws ConfigError unless 1 <= k < p, sets.size() == p - k, each T_m is
  // strictly ascending within (m, p], and at least one tag exists.
  void validate() const;

  long tag_count() const;
  int max_q() const;
  std::vector<std::pair<int, int>> tags() const;

  // Rows of the stacked disturbance vector, counted in n-blocks: each tag
  // (m, q) contributes q + 1 blocks (initial state, observation difference,
  // m - 1 paired process terms, q - m unpaired ones).
  long stacked_block_count() const;
};

}  // namespace sysid
