#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dats/core/types.hpp"

namespace dats::instgen {

struct IntRange {
  int lo;
  int hi;
};

/// Generator parameters. Integer draws are uniform on the closed ranges below.
struct GenParams {
  int horizon = 16;
  int docks = 1;
  int trucks = 1;
  IntRange scenario_count{1, 4};
  IntRange arrival{0, 12};     // [0, floor(0.75 T)]
  IntRange processing{2, 4};   // [ceil(T/8), floor(T/4)]
  IntRange setup{1, 3};
  IntRange window_slack{3, 5};
  IntRange workers{3, 6};
  IntRange equipment{1, 3};
  IntRange vehicles{3, 7};
  IntRange wait_cost{5, 10};
  int miss_multiplier = 100;
  /// Capacity factor as a rational number (default 4/5).
  int capacity_num = 4;
  int capacity_den = 5;
  std::uint64_t seed = 0;
  core::Variant variant = core::Variant::kSdPT;

  /// Defaults with the arrival and processing ranges derived from `horizon`.
  static GenParams for_horizon(int horizon);
  /// Throws std::invalid_argument on an empty range or a nonpositive count.
  void validate() const;
};

/// Raw draws for one truck, kept so distribution checks can see the slack before
/// the deadline is clipped to the horizon.
struct TruckDraws {
  int scenario_count;
  int arrival;
  int setup;
  int slack;
  int wait_cost;
  std::vector<int> processing;  // per scenario
};

struct Generated {
  core::Instance instance;
  std::vector<TruckDraws> draws;
};

/// Draw order per truck (ids 1..trucks, one CounterRng stream keyed by `seed`):
/// scenario count, arrival, setup, slack, wait cost, then [SiPT: one processing time],
/// then per scenario [SdPT: processing time], personnel, equipment, vehicles.
/// deadline = min(horizon, arrival + setup + max scenario processing + slack).
/// miss penalty = miss_multiplier * wait cost. Capacity of each resource is
/// max(max over trucks of the truck's smallest scenario demand,
///     ceil(capacity_factor * docks * mean scenario demand)).
Generated generate_detailed(const GenParams& params);
core::Instance generate(const GenParams& params);

/// tf-{T}-d-{docks}-tr-{trucks}-sce-{total scenarios}
std::string instance_name(const GenParams& params, std::size_t total_scenarios);

/// Truck counts to generate for a given dock count.
using TruckCountRule = std::function<std::vector<int>(int docks)>;
/// first, first + step, ... up to last (inclusive), independent of the dock count.
TruckCountRule fixed_counts(int first, int last, int step = 1);
/// lo_mult*d, lo_mult*d + step, ... up to hi_mult*d.
TruckCountRule per_dock_counts(int lo_mult, int hi_mult, int step = 1);

/// One instance per (dock count, truck count) pair, seeds base.seed + running index.
/// Throws std::invalid_argument when a truck count is below 3*docks or above 200.
std::vector<core::Instance> generate_suite(const GenParams& base, const std::vector<int>& dock_values,
                                           const TruckCountRule& rule);

}  // namespace dats::instgen
