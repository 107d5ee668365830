#include "dats/core/types.hpp"

#include <string>
#include <unordered_set>

namespace dats::core {

const char* variant_name(Variant v) { return v == Variant::kSiPT ? "SiPT" : "SdPT"; }

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kFeasible:
      return "Feasible";
    case SolveStatus::kLimit:
      return "Limit";
    case SolveStatus::kInfeasible:
      return "Infeasible";
  }
  return "?";
}

int demand(const ResourceScenario& s, Resource r) {
  switch (r) {
    case Resource::kWorkers:
      return s.workers;
    case Resource::kEquipment:
      return s.equipment;
    case Resource::kVehicles:
      return s.vehicles;
  }
  return 0;
}

const char* resource_name(Resource r) {
  switch (r) {
    case Resource::kWorkers:
      return "personnel";
    case Resource::kEquipment:
      return "equipment";
    case Resource::kVehicles:
      return "vehicles";
  }
  return "?";
}

int Capacity::of(Resource r) const {
  switch (r) {
    case Resource::kWorkers:
      return workers;
    case Resource::kEquipment:
      return equipment;
    case Resource::kVehicles:
      return vehicles;
  }
  return 0;
}

std::optional<std::size_t> Instance::find(TruckId id) const {
  for (std::size_t p = 0; p < trucks.size(); ++p) {
    if (trucks[p].id == id) return p;
  }
  return std::nullopt;
}

const Truck& Instance::truck(TruckId id) const {
  auto pos = find(id);
  if (!pos) throw ValidationError("unknown truck id " + std::to_string(id));
  return trucks[*pos];
}

std::size_t Instance::total_scenarios() const {
  std::size_t n = 0;
  for (const auto& t : trucks) n += t.scenarios.size();
  return n;
}

bool Instance::scenario_invariant() const {
  for (const auto& t : trucks) {
    for (const auto& s : t.scenarios) {
      if (s.processing != t.scenarios.front().processing) return false;
    }
  }
  return true;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

std::string truck_field(TruckId id, const std::string& field) {
  return "truck " + std::to_string(id) + " " + field;
}

}  // namespace

void validate(const Instance& inst) {
  if (inst.horizon < 1) fail("horizon", "must be >= 1");
  if (inst.docks < 1) fail("docks", "must be >= 1");
  if (inst.capacity.workers < 0) fail("capacity.personnel", "must be >= 0");
  if (inst.capacity.equipment < 0) fail("capacity.equipment", "must be >= 0");
  if (inst.capacity.vehicles < 0) fail("capacity.vehicles", "must be >= 0");
  std::unordered_set<TruckId> seen;
  for (const auto& t : inst.trucks) {
    if (t.id < 1) fail(truck_field(t.id, "id"), "must be a positive integer");
    if (!seen.insert(t.id).second) fail(truck_field(t.id, "id"), "duplicate truck id");
    if (t.arrival < 0) fail(truck_field(t.id, "arrival"), "must be >= 0");
    if (t.deadline <= t.arrival) fail(truck_field(t.id, "deadline"), "must exceed arrival");
    if (t.deadline > inst.horizon) fail(truck_field(t.id, "deadline"), "exceeds horizon");
    if (t.setup < 0) fail(truck_field(t.id, "setup"), "must be >= 0");
    if (t.wait_cost < 0) fail(truck_field(t.id, "wait_cost"), "must be >= 0");
    if (t.miss_penalty < 0) fail(truck_field(t.id, "miss_penalty"), "must be >= 0");
    if (t.scenarios.empty()) fail(truck_field(t.id, "scenarios"), "must be nonempty");
    for (std::size_t k = 0; k < t.scenarios.size(); ++k) {
      const auto& s = t.scenarios[k];
      const std::string f = truck_field(t.id, "scenarios[" + std::to_string(k) + "]");
      if (s.workers < 0 || s.equipment < 0 || s.vehicles < 0) {
        fail(f, "resource demand must be >= 0");
      }
      if (s.processing < 1) fail(f + ".processing", "must be >= 1");
    }
  }
}

Schedule Schedule::empty_for(const Instance& inst) {
  Schedule s;
  s.per_dock.assign(static_cast<std::size_t>(inst.docks), {});
  for (const auto& t : inst.trucks) s.unserved.insert(t.id);
  return s;
}

}  // namespace dats::core
