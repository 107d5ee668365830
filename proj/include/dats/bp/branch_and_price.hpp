#pragma once

#include <optional>
#include <string>

#include "dats/compact/model.hpp"
#include "dats/core/types.hpp"

namespace dats::bp {

struct BpOptions {
  compact::BuildOptions build;
  double time_limit = 0.0;  // seconds, 0 = none
  /// Stop with the incumbent when the master bound has not moved for this long
  /// (seconds, 0 = never).
  double stall_time = 0.0;
  /// A pricing search that has found a negative column returns once it has processed
  /// this many nodes; without one it runs to completion.
  long pricing_node_budget = 50;
  bool combinatorial_cuts = false;  // also separate cover cuts in pricing
  /// Pricing solutions with reduced cost at or below this become columns; the best one
  /// found by each search is added whenever it is negative. Must be <= -1e-6.
  double pool_threshold = -1e-6;
};

struct BpStats {
  std::string instance;
  core::Variant variant = core::Variant::kSdPT;
  long master_nodes = 0;
  long pricing_calls = 0;
  long columns = 0;
  core::SolveStatus status = core::SolveStatus::kLimit;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
  /// Lower bound on the reduced cost proven by the last complete pricing search.
  double min_reduced_cost = 0.0;
  /// Root RMP MIP minus root master LP bound.
  double root_gap = 0.0;
  bool certified = false;  // proven pricing bound >= -1e-6 and master gap < 1
};

struct BpResult {
  std::optional<core::Schedule> schedule;  // scenario indices of the input instance
  core::CostBreakdown cost;
  BpStats stats;
};

BpResult branch_and_price(const core::Instance& inst, core::Variant variant, const BpOptions& opts = {});

std::string stats_csv_header();
/// instance,master_nodes,pricing_calls,columns,status,gap,seconds
std::string stats_csv_row(const BpStats& s);

}  // namespace dats::bp
