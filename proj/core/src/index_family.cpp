#include "sysid/index_family.hpp"

#include <algorithm>
#include <string>

#include "sysid/errors.hpp"

namespace sysid {

IndexFamily IndexFamily::full(int k, int p) {
  IndexFamily fam;
  fam.k = k;
  fam.p = p;
  fam.sets.resize(p > k ? p - k : 0);
  for (int m = k; m < p; ++m) {
    for (int q = m + 1; q <= p; ++q) fam.sets[m - k].push_back(q);
  }
  fam.validate();
  return fam;
}

IndexFamily IndexFamily::chain(int k, int p) {
  IndexFamily fam;
  fam.k = k;
  fam.p = p;
  fam.sets.resize(p > k ? p - k : 0);
  for (int m = k; m < p; ++m) fam.sets[m - k].push_back(m + 1);
  fam.validate();
  return fam;
}

IndexFamily IndexFamily::from_tags(int k, int p,
                                   const std::vector<std::pair<int, int>>& tags) {
  IndexFamily fam;
  fam.k = k;
  fam.p = p;
  fam.sets.resize(p > k ? p - k : 0);
  for (auto [m, q] : tags) {
    if (m < k || m >= p) {
      throw ConfigError("tag (" + std::to_string(m) + ", " + std::to_string(q) +
                        "): m outside [" + std::to_string(k) + ", " +
                        std::to_string(p - 1) + "]");
    }
    fam.sets[m - k].push_back(q);
  }
  for (auto& set : fam.sets) std::sort(set.begin(), set.end());
  fam.validate();
  return fam;
}

void IndexFamily::validate() const {
  if (k < 1 || p <= k) {
    throw ConfigError("index family needs 1 <= k < p, got k=" + std::to_string(k) +
                      " p=" + std::to_string(p));
  }
  if (static_cast<int>(sets.size()) != p - k) {
    throw ConfigError("index family needs one T_m per m in [k, p-1]; have " +
                      std::to_string(sets.size()) + " sets for window [" +
                      std::to_string(k) + ", " + std::to_string(p) + "]");
  }
  long total = 0;
  for (int m = k; m < p; ++m) {
    const auto& set = sets[m - k];
    int prev = m;
    for (int q : set) {
      if (q <= prev) {
        throw ConfigError("T_" + std::to_string(m) +
                          " must be strictly ascending within (" + std::to_string(m) +
                          ", " + std::to_string(p) + "]");
      }
      if (q > p) {
        throw ConfigError("T_" + std::to_string(m) + " contains q=" + std::to_string(q) +
                          " beyond p=" + std::to_string(p));
      }
      prev = q;
    }
    total += static_cast<long>(set.size());
  }
  if (total == 0) throw ConfigError("index family has no tags");
}

long IndexFamily::tag_count() const {
  long total = 0;
  for (const auto& set : sets) total += static_cast<long>(set.size());
  return total;
}

int IndexFamily::max_q() const {
  int best = 0;
  for (const auto& set : sets) {
    if (!set.empty()) best = std::max(best, set.back());
  }
  return best;
}

std::vector<std::pair<int, int>> IndexFamily::tags() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(tag_count());
  for (int m = k; m < p; ++m) {
    for (int q : sets[m - k]) out.emplace_back(m, q);
  }
  return out;
}

long IndexFamily::stacked_block_count() const {
  long total = 0;
  for (int m = k; m < p; ++m) {
    for (int q : sets[m - k]) total += q + 1;
  }
  return total;
}

}  // namespace sysid
