#pragma once

#include <vector>

#include "dats/core/types.hpp"

namespace dats::core {

/// Chronological fill: trucks in arrival order (ties by id) are placed one at a time.
/// Starts are tried from the arrival onward; at each start the docks already free are
/// tried in order of their free time and each scenario in index order, subject to the
/// resource capacity over the processing window. A truck that fits nowhere is left
/// unserved. No improvement pass is made; the result is always feasible.
Schedule chronological_fill(const Instance& inst);

/// Places trucks (positions in inst.trucks) in the given order, each at its earliest
/// start on the lowest-index dock with a free interval, trying scenarios in
/// scenario_order[p]. Trucks left out of `order` or placed nowhere are unserved.
Schedule list_schedule(const Instance& inst, const std::vector<std::size_t>& order,
                       const std::vector<std::vector<int>>& scenario_order);

}  // namespace dats::core
