#include "sysid/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sysid/covariance.hpp"
#include "sysid/errors.hpp"
#include "sysid/index_family.hpp"

namespace sysid {
namespace {

std::vector<std::pair<int, int>> pool_tags(int k, int p) {
  std::vector<std::pair<int, int>> pool;
  for (int m = k; m < p; ++m) {
    for (int q = m + 1; q <= p; ++q) pool.emplace_back(m, q);
  }
  return pool;
}

struct ObjectiveParts {
  double t1_numerator = 0.0;  // ((1 - 2 eps) rho3)^2
  double t2_numerator = 0.0;  // (1 - 2 eps) rho3
  double g_squared = 0.0;
};

ObjectiveParts make_parts(const ComplexityConfig& config, const BoundSet& bounds) {
  ObjectiveParts parts;
  const double base = (1.0 - 2.0 * config.eps) * config.rho3;
  parts.t1_numerator = base * base;
  parts.t2_numerator = base;
  parts.g_squared = bounds.g_factor * bounds.g_factor;
  return parts;
}

double objective_from_parts(const ObjectiveParts& parts, long block_count,
                            double f_sum_value, double cv_norm) {
  if (!(f_sum_value > 0.0) || !(cv_norm > 0.0) || block_count <= 0) {
    throw NumericalError("selection objective needs positive f-sum and covariance norm");
  }
  const double pb = parts.g_squared / f_sum_value;
  const double t1 =
      parts.t1_numerator / (static_cast<double>(block_count) * pb * pb * cv_norm);
  const double t2 = parts.t2_numerator / pb;
  return std::min(t1, t2);
}

}  // namespace

double selection_objective(const std::vector<std::pair<int, int>>& tags,
                           const ComplexityConfig& config, const BoundSet& bounds) {
  config.validate();
  const IndexFamily family = IndexFamily::from_tags(bounds.k, bounds.p, tags);
  const ObjectiveParts parts = make_parts(config, bounds);
  const EtaCovariance cov(family, bounds.var, bounds.n);
  return objective_from_parts(parts, family.stacked_block_count(),
                              f_sum(bounds, family), cov.norm());
}

SelectionResult select(int k, int p, const ComplexityConfig& config,
                       const BoundSet& bounds, SelectionStrategy strategy,
                       int pool_cap, int max_additions) {
  config.validate();
  if (k != bounds.k || p != bounds.p) {
    throw ConfigError("selection window must match the bound set window");
  }
  if (k < 1 || p <= k) throw ConfigError("selection needs 1 <= k < p");

  const std::vector<std::pair<int, int>> pool = pool_tags(k, p);
  SelectionResult result;
  result.strategy = strategy;

  if (strategy == SelectionStrategy::Exhaustive) {
    if (static_cast<int>(pool.size()) > pool_cap || pool.size() > 24) {
      throw ConfigError("exhaustive selection pool exceeds the configured cap");
    }
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> best_tags;
    const unsigned long limit = 1ul << pool.size();
    std::vector<std::pair<int, int>> tags;
    for (unsigned long mask = 1; mask < limit; ++mask) {
      tags.clear();
      for (std::size_t bit = 0; bit < pool.size(); ++bit) {
        if (mask & (1ul << bit)) tags.push_back(pool[bit]);
      }
      const double value = selection_objective(tags, config, bounds);
      ++result.evaluations;
      if (value > best) {
        best = value;
        best_tags = tags;
      }
    }
    result.chosen_tags = best_tags;
    result.objective_value = best;
    return result;
  }

  // Greedy path, seeded with the chain. Every accepted value comes from
  // selection_objective on the full tag set, so the reported objective is
  // exactly what a fresh evaluation of the chosen tags returns.
  const ObjectiveParts parts = make_parts(config, bounds);

  std::vector<std::pair<int, int>> current;
  for (int m = k; m < p; ++m) current.emplace_back(m, m + 1);
  long blocks_cur = 0;
  for (const auto& [m, q] : current) blocks_cur += q + 1;

  double current_objective = selection_objective(current, config, bounds);
  ++result.evaluations;
  result.trace.push_back({{0, 0}, current_objective});

  std::vector<std::pair<int, int>> remaining;
  for (const auto& tag : pool) {
    if (tag.second != tag.first + 1) remaining.push_back(tag);
  }

  const auto with_tag = [](const std::vector<std::pair<int, int>>& base,
                           const std::pair<int, int>& tag) {
    std::vector<std::pair<int, int>> out = base;
    out.insert(std::lower_bound(out.begin(), out.end(), tag), tag);
    return out;
  };

  for (int round = 0; round < max_additions && !remaining.empty(); ++round) {
    const double f_base =
        f_sum(bounds, IndexFamily::from_tags(k, p, current));
    const double cv_cur =
        EtaCovariance(IndexFamily::from_tags(k, p, current), bounds.var, bounds.n)
            .norm();

    // Adding a tag appends PSD rows to the covariance factor, so its norm can
    // only grow; the current norm upper-bounds every candidate's first ratio.
    // The slack factor absorbs summation-order differences against the exact
    // evaluation below.
    std::vector<double> upper(remaining.size());
    std::size_t seed_index = 0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const auto& tag = remaining[i];
      const double fs = f_base + f_pair(bounds, tag.first, tag.second);
      const double pb = parts.g_squared / fs;
      const double t2 = parts.t2_numerator / pb;
      const double t1_upper =
          parts.t1_numerator /
          (static_cast<double>(blocks_cur + tag.second + 1) * pb * pb * cv_cur);
      upper[i] = std::min(t1_upper, t2) * (1.0 + 1e-9);
      if (upper[i] > upper[seed_index]) seed_index = i;
    }

    double best_value = selection_objective(with_tag(current, remaining[seed_index]),
                                            config, bounds);
    std::pair<int, int> best_tag = remaining[seed_index];
    ++result.evaluations;

    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (i == seed_index) continue;
      const auto& tag = remaining[i];
      const bool can_win =
          upper[i] > best_value || (upper[i] >= best_value && tag < best_tag);
      if (!can_win) continue;
      const double value = selection_objective(with_tag(current, tag), config, bounds);
      ++result.evaluations;
      if (value > best_value || (value == best_value && tag < best_tag)) {
        best_value = value;
        best_tag = tag;
      }
    }

    if (!(best_value > current_objective)) break;
    current = with_tag(current, best_tag);
    current_objective = best_value;
    blocks_cur += best_tag.second + 1;
    remaining.erase(std::find(remaining.begin(), remaining.end(), best_tag));
    result.trace.push_back({best_tag, current_objective});
  }

  result.chosen_tags = current;
  result.objective_value = current_objective;
  return result;
}

}  // namespace sysid
