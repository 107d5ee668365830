#include "dats/core/evaluate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

namespace dats::core {

Window resource_window(const Truck& truck, int scenario, Period start) {
  const int p = truck.scenarios[static_cast<std::size_t>(scenario)].processing;
  return {start + truck.setup + 1, start + truck.setup + p};
}

CostBreakdown evaluate(const Instance& inst, const Schedule& sched) {
  if (sched.per_dock.size() != static_cast<std::size_t>(inst.docks)) {
    throw ValidationError("schedule has " + std::to_string(sched.per_dock.size()) +
                          " docks, instance has " + std::to_string(inst.docks));
  }
  CostBreakdown cost;
  for (const auto& chain : sched.per_dock) {
    for (const auto& a : chain) {
      const Truck& t = inst.truck(a.truck);
      cost.waiting_cost += t.wait_cost * static_cast<Cost>(a.start - t.arrival);
    }
  }
  for (TruckId id : sched.unserved) cost.miss_cost += inst.truck(id).miss_penalty;
  return cost;
}

namespace {

std::string tid(TruckId id) { return "truck " + std::to_string(id); }

}  // namespace

std::vector<Violation> check_feasibility(const Instance& inst, const Schedule& sched) {
  std::vector<Violation> out;
  if (sched.per_dock.size() != static_cast<std::size_t>(inst.docks)) {
    out.push_back({ViolationKind::kStructure, 0, -1,
                   "schedule has " + std::to_string(sched.per_dock.size()) + " docks, instance has " +
                       std::to_string(inst.docks)});
  }

  std::map<TruckId, int> seen;
  for (const auto& chain : sched.per_dock) {
    for (const auto& a : chain) ++seen[a.truck];
  }
  for (TruckId id : sched.unserved) ++seen[id];
  for (const auto& [id, count] : seen) {
    if (!inst.find(id)) {
      out.push_back({ViolationKind::kStructure, id, -1, tid(id) + " is not in the instance"});
    } else if (count > 1) {
      out.push_back({ViolationKind::kStructure, id, -1, tid(id) + " appears " +
                                                            std::to_string(count) + " times"});
    }
  }
  for (const auto& t : inst.trucks) {
    if (!seen.count(t.id)) {
      out.push_back({ViolationKind::kStructure, t.id, -1, tid(t.id) + " is neither served nor unserved"});
    }
  }

  // period -> usage per resource
  std::map<Period, std::array<long, 3>> usage;
  for (std::size_t d = 0; d < sched.per_dock.size(); ++d) {
    const auto& chain = sched.per_dock[d];
    const Truck* prev = nullptr;
    const Assignment* prev_a = nullptr;
    for (const auto& a : chain) {
      auto pos = inst.find(a.truck);
      if (!pos) {
        prev = nullptr;
        continue;
      }
      const Truck& t = inst.trucks[*pos];
      if (a.scenario < 0 || static_cast<std::size_t>(a.scenario) >= t.scenarios.size()) {
        out.push_back({ViolationKind::kStructure, t.id, -1,
                       tid(t.id) + " uses unknown scenario " + std::to_string(a.scenario)});
        prev = nullptr;
        continue;
      }
      const auto& s = t.scenarios[static_cast<std::size_t>(a.scenario)];
      if (a.start < t.arrival) {
        out.push_back({ViolationKind::kWindow, t.id, a.start,
                       tid(t.id) + " starts at " + std::to_string(a.start) + " before arrival " +
                           std::to_string(t.arrival)});
      }
      if (a.start + t.setup + s.processing > t.deadline) {
        out.push_back({ViolationKind::kWindow, t.id, a.start,
                       tid(t.id) + " finishes at " + std::to_string(a.start + t.setup + s.processing) +
                           " after deadline " + std::to_string(t.deadline)});
      }
      if (prev != nullptr) {
        const auto& ps = prev->scenarios[static_cast<std::size_t>(prev_a->scenario)];
        const Period ready = prev_a->start + ps.processing + prev->setup;
        if (a.start < ready) {
          out.push_back({ViolationKind::kSequencing, t.id, a.start,
                         tid(t.id) + " starts at " + std::to_string(a.start) + " on dock " +
                             std::to_string(d) + " before " + tid(prev->id) + " leaves at " +
                             std::to_string(ready)});
        }
      }
      const Window w = resource_window(t, a.scenario, a.start);
      for (Period p = w.first; p <= w.last; ++p) {
        auto& u = usage[p];
        u[0] += s.workers;
        u[1] += s.equipment;
        u[2] += s.vehicles;
      }
      prev = &t;
      prev_a = &a;
    }
  }
  for (const auto& [period, u] : usage) {
    for (Resource r : kAllResources) {
      const long used = u[static_cast<std::size_t>(r)];
      if (used > inst.capacity.of(r)) {
        out.push_back({ViolationKind::kResource, 0, period,
                       std::string(resource_name(r)) + " usage " + std::to_string(used) +
                           " exceeds capacity " + std::to_string(inst.capacity.of(r)) +
                           " in period " + std::to_string(period)});
      }
    }
  }
  return out;
}

}  // namespace dats::core
