#pragma once

#include <stdexcept>

#include "dats/core/types.hpp"

namespace dats::oracle {

struct OracleLimits {
  int max_trucks = 6;
  int max_horizon = 14;
  int max_scenarios = 3;
  int max_docks = 3;
};

/// Instance outside the oracle limits.
class LimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  core::Schedule schedule;
  core::CostBreakdown cost;
  long nodes = 0;
};

/// Depth-first enumeration over trucks in input order. Each truck is left unserved or
/// given a (scenario, dock, start) with start in [arrival, deadline - setup - processing].
/// Partial schedules are pruned when their cost plus every remaining truck's cheapest
/// individual option cannot beat the incumbent, and an empty dock is only opened in
/// index order. `exhaustive` switches both off (at most 3 trucks).
/// Ties keep the first schedule found; the chronological fill seeds the incumbent.
OracleResult brute_force(const core::Instance& inst, const OracleLimits& limits = {},
                         bool exhaustive = false);

}  // namespace dats::oracle
