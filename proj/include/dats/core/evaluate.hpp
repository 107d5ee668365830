#pragma once

#include <string>
#include <vector>

#include "dats/core/types.hpp"

namespace dats::core {

/// Waiting is charged from arrival to the arc-start period, not to service start.
/// Throws ValidationError on unknown truck ids or a dock count mismatch.
CostBreakdown evaluate(const Instance& inst, const Schedule& sched);

enum class ViolationKind { kStructure, kWindow, kSequencing, kResource };

struct Violation {
  ViolationKind kind;
  TruckId truck = 0;    // 0 when not tied to one truck
  Period period = -1;   // set for resource violations
  std::string message;
};

/// Empty iff the schedule is feasible. A served truck with start t under scenario s
/// holds its scenario's resources during periods t+setup+1 .. t+setup+processing.
std::vector<Violation> check_feasibility(const Instance& inst, const Schedule& sched);

/// Periods (inclusive) during which a served truck occupies its scenario's resources.
struct Window {
  Period first;
  Period last;  // inclusive
};
Window resource_window(const Truck& truck, int scenario, Period start);

}  // namespace dats::core
