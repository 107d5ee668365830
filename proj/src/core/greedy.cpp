#include "dats/core/greedy.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "dats/core/evaluate.hpp"

namespace dats::core {

namespace {

class ResourceProfile {
 public:
  explicit ResourceProfile(const Instance& inst)
      : cap_(inst.capacity), used_(static_cast<std::size_t>(inst.horizon) + 1, {0, 0, 0}) {}

  bool fits(const ResourceScenario& s, Window w) const {
    for (Period p = w.first; p <= w.last; ++p) {
      const auto& u = used_[static_cast<std::size_t>(p)];
      if (u[0] + s.workers > cap_.workers || u[1] + s.equipment > cap_.equipment ||
          u[2] + s.vehicles > cap_.vehicles) {
        return false;
      }
    }
    return true;
  }

  void add(const ResourceScenario& s, Window w) {
    for (Period p = w.first; p <= w.last; ++p) {
      auto& u = used_[static_cast<std::size_t>(p)];
      u[0] += s.workers;
      u[1] += s.equipment;
      u[2] += s.vehicles;
    }
  }

 private:
  Capacity cap_;
  std::vector<std::array<int, 3>> used_;
};

}  // namespace

Schedule chronological_fill(const Instance& inst) {
  Schedule sched;
  sched.per_dock.assign(static_cast<std::size_t>(inst.docks), {});
  std::vector<std::size_t> order(inst.trucks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = inst.trucks[a];
    const auto& tb = inst.trucks[b];
    return ta.arrival != tb.arrival ? ta.arrival < tb.arrival : ta.id < tb.id;
  });

  std::vector<Period> dock_free(static_cast<std::size_t>(inst.docks), 0);
  ResourceProfile profile(inst);
  for (std::size_t p : order) {
    const Truck& t = inst.trucks[p];
    std::vector<int> docks(static_cast<std::size_t>(inst.docks));
    std::iota(docks.begin(), docks.end(), 0);
    std::stable_sort(docks.begin(), docks.end(),
                     [&](int a, int b) { return dock_free[a] < dock_free[b]; });
    bool placed = false;
    Period latest = -1;
    for (std::size_t s = 0; s < t.scenarios.size(); ++s) {
      latest = std::max(latest, t.latest_start(static_cast<int>(s)));
    }
    for (Period start = t.arrival; start <= latest && !placed; ++start) {
      for (int d : docks) {
        if (dock_free[d] > start) continue;
        for (std::size_t s = 0; s < t.scenarios.size(); ++s) {
          if (start > t.latest_start(static_cast<int>(s))) continue;
          const Window w = resource_window(t, static_cast<int>(s), start);
          if (!profile.fits(t.scenarios[s], w)) continue;
          profile.add(t.scenarios[s], w);
          sched.per_dock[d].push_back({t.id, static_cast<int>(s), start});
          dock_free[d] = start + t.setup + t.scenarios[s].processing;
          placed = true;
          break;
        }
        if (placed) break;
      }
    }
    if (!placed) sched.unserved.insert(t.id);
  }
  return sched;
}

}  // namespace dats::core

namespace dats::core {

Schedule list_schedule(const Instance& inst, const std::vector<std::size_t>& order,
                       const std::vector<std::vector<int>>& scenario_order) {
  Schedule sched;
  sched.per_dock.assign(static_cast<std::size_t>(inst.docks), {});
  std::vector<std::vector<std::pair<Period, Period>>> busy(static_cast<std::size_t>(inst.docks));
  ResourceProfile profile(inst);
  std::vector<char> placed_any(inst.trucks.size(), 0);
  for (std::size_t p : order) {
    const Truck& t = inst.trucks[p];
    Period latest = -1;
    for (std::size_t s = 0; s < t.scenarios.size(); ++s) latest = std::max(latest, t.latest_start(static_cast<int>(s)));
    bool placed = false;
    for (Period start = t.arrival; start <= latest && !placed; ++start) {
      for (int d = 0; d < inst.docks && !placed; ++d) {
        for (int s : scenario_order[p]) {
          if (start > t.latest_start(s)) continue;
          const Period end = start + t.setup + t.scenarios[static_cast<std::size_t>(s)].processing;
          bool free = true;
          for (const auto& [a, b] : busy[static_cast<std::size_t>(d)]) {
            if (start < b && a < end) free = false;
          }
          if (!free) continue;
          const Window w = resource_window(t, s, start);
          if (!profile.fits(t.scenarios[static_cast<std::size_t>(s)], w)) continue;
          profile.add(t.scenarios[static_cast<std::size_t>(s)], w);
          busy[static_cast<std::size_t>(d)].emplace_back(start, end);
          sched.per_dock[static_cast<std::size_t>(d)].push_back({t.id, s, start});
          placed = true;
          break;
        }
      }
    }
    placed_any[p] = placed;
  }
  for (std::size_t p = 0; p < inst.trucks.size(); ++p) {
    if (!placed_any[p]) sched.unserved.insert(inst.trucks[p].id);
  }
  for (auto& dock : sched.per_dock) {
    std::sort(dock.begin(), dock.end(), [](const Assignment& a, const Assignment& b) { return a.start < b.start; });
  }
  return sched;
}

}  // namespace dats::core
