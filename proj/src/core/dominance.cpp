#include "dats/core/dominance.hpp"

namespace dats::core {

bool generally_dominates(const ResourceScenario& a, const ResourceScenario& b) {
  return a.workers <= b.workers && a.equipment <= b.equipment && a.vehicles <= b.vehicles &&
         a.processing <= b.processing;
}

bool strictly_dominates(const ResourceScenario& a, const ResourceScenario& b) {
  return generally_dominates(a, b) && !(a == b);
}

PruneResult prune_dominated_scenarios(const Instance& inst) {
  PruneResult out{inst, {}};
  out.report.kept.resize(inst.trucks.size());
  for (std::size_t p = 0; p < inst.trucks.size(); ++p) {
    const auto& sc = inst.trucks[p].scenarios;
    const int n = static_cast<int>(sc.size());
    std::vector<bool> removed(sc.size(), false);
    // Strict dominance is transitive, so being dominated by any scenario implies
    // being dominated by a surviving one.
    for (int k = 0; k < n; ++k) {
      for (int m = 0; m < n && !removed[k]; ++m) {
        if (m == k) continue;
        if (strictly_dominates(sc[m], sc[k]) || (m < k && sc[m] == sc[k])) removed[k] = true;
      }
    }
    auto& kept = out.report.kept[p];
    std::vector<ResourceScenario> survivors;
    for (int k = 0; k < n; ++k) {
      if (!removed[k]) {
        kept.push_back(k);
        survivors.push_back(sc[k]);
      }
    }
    for (int k = 0; k < n; ++k) {
      if (!removed[k]) continue;
      int by = -1;
      for (int m : kept) {
        if (generally_dominates(sc[m], sc[k])) {
          by = m;
          break;
        }
      }
      out.report.removals.push_back({inst.trucks[p].id, k, by});
    }
    out.instance.trucks[p].scenarios = std::move(survivors);
  }
  return out;
}

Schedule restore_scenario_indices(const Instance& original, const PruneReport& report,
                                  Schedule sched) {
  for (auto& chain : sched.per_dock) {
    for (auto& a : chain) {
      const auto pos = original.find(a.truck);
      if (!pos) throw ValidationError("unknown truck id " + std::to_string(a.truck));
      a.scenario = report.original_index(*pos, a.scenario);
    }
  }
  return sched;
}

}  // namespace dats::core
