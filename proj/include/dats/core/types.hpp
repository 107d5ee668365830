#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dats::core {

using Cost = std::int64_t;
using TruckId = int;
using Period = int;

/// Malformed input text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SiPT: every scenario of a truck shares one processing time. SdPT: scenarios may differ.
enum class Variant { kSiPT, kSdPT };
const char* variant_name(Variant v);

/// Resource deployment scenario: one way of serving a truck.
struct ResourceScenario {
  int workers = 0;
  int equipment = 0;
  int vehicles = 0;
  int processing = 1;  // periods

  friend bool operator==(const ResourceScenario&, const ResourceScenario&) = default;
};

enum class Resource { kWorkers, kEquipment, kVehicles };
inline constexpr Resource kAllResources[] = {Resource::kWorkers, Resource::kEquipment,
                                             Resource::kVehicles};

int demand(const ResourceScenario& s, Resource r);
const char* resource_name(Resource r);

struct Truck {
  TruckId id = 0;
  Period arrival = 0;
  Period deadline = 0;
  int setup = 0;
  Cost wait_cost = 0;
  Cost miss_penalty = 0;
  std::vector<ResourceScenario> scenarios;

  /// Latest arc-start period under scenario `s`; may be below `arrival`.
  Period latest_start(int s) const { return deadline - setup - scenarios[s].processing; }
  bool can_fit(int s) const { return latest_start(s) >= arrival; }

  friend bool operator==(const Truck&, const Truck&) = default;
};

struct Capacity {
  int workers = 0;
  int equipment = 0;
  int vehicles = 0;

  int of(Resource r) const;
  friend bool operator==(const Capacity&, const Capacity&) = default;
};

/// Periods are the closed grid 0..horizon. The synthetic dummy truck that opens
/// and closes every dock chain is never stored here.
struct Instance {
  std::string name;
  Period horizon = 1;
  int docks = 1;
  Capacity capacity;
  std::vector<Truck> trucks;

  /// Position of the truck with `id` in `trucks`, or nullopt.
  std::optional<std::size_t> find(TruckId id) const;
  const Truck& truck(TruckId id) const;
  std::size_t total_scenarios() const;
  /// True when every truck's scenarios share one processing time.
  bool scenario_invariant() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws ValidationError naming the field and truck id on the first violated invariant.
void validate(const Instance& inst);

struct Assignment {
  TruckId truck = 0;
  int scenario = 0;
  Period start = 0;  // period at which the arc into this truck fires

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Schedule {
  std::vector<std::vector<Assignment>> per_dock;
  std::set<TruckId> unserved;

  /// All-unserved schedule for `inst`.
  static Schedule empty_for(const Instance& inst);

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Outcome reported by every engine.
enum class SolveStatus { kOptimal, kFeasible, kLimit, kInfeasible };
const char* status_name(SolveStatus s);

struct CostBreakdown {
  Cost waiting_cost = 0;
  Cost miss_cost = 0;
  Cost total() const { return waiting_cost + miss_cost; }
};

}  // namespace dats::core
