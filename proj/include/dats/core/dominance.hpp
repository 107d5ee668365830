#pragma once

#include <vector>

#include "dats/core/types.hpp"

namespace dats::core {

/// `a` uses no more of any resource and no more time than `b`.
bool generally_dominates(const ResourceScenario& a, const ResourceScenario& b);
/// General dominance with a strict inequality in processing time or in at least one resource.
bool strictly_dominates(const ResourceScenario& a, const ResourceScenario& b);

struct ScenarioRemoval {
  TruckId truck;
  int removed;       // index in the original scenario list
  int dominated_by;  // index in the original scenario list
};

struct PruneReport {
  std::vector<ScenarioRemoval> removals;
  /// kept[p][k] = original index of the k-th surviving scenario of trucks[p].
  std::vector<std::vector<int>> kept;

  /// Maps a scenario index of the pruned instance back to the original list.
  int original_index(std::size_t truck_pos, int pruned_index) const {
    return kept[truck_pos][pruned_index];
  }
};

struct PruneResult {
  Instance instance;
  PruneReport report;
};

/// Removes every scenario strictly dominated by another scenario of the same truck.
/// Exact duplicates keep the lowest index. At least one scenario per truck survives.
PruneResult prune_dominated_scenarios(const Instance& inst);

/// Rewrites scenario indices of a schedule on the pruned instance to the original indices.
Schedule restore_scenario_indices(const Instance& original, const PruneReport& report,
                                  Schedule sched);

}  // namespace dats::core
