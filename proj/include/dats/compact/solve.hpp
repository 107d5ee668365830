#pragma once

#include <optional>
#include <string>

#include "dats/compact/model.hpp"
#include "dats/milp/mip.hpp"

namespace dats::compact {

struct CompactOptions {
  BuildOptions build;
  double time_limit = 0.0;  // seconds, 0 = none
  milp::NodeOrder order = milp::NodeOrder::kBreadthFirst;
  bool combinatorial_cuts = false;
  bool warm_start = true;  // chronological fill as the first incumbent
  bool heuristic = true;   // list schedule guided by the root relaxation
};

struct CompactStats {
  std::string instance;
  core::Variant variant = core::Variant::kSdPT;
  long nodes = 0;
  core::SolveStatus status = core::SolveStatus::kLimit;
  double objective = 0.0;  // meaningful with an incumbent
  double bound = 0.0;
  double gap = 0.0;  // objective - bound
  double seconds = 0.0;
  int variables = 0;
  int rows = 0;
  std::size_t lazy_rows = 0;
  FixingReport fixing;
};

struct CompactResult {
  std::optional<core::Schedule> schedule;  // scenario indices of the input instance
  core::CostBreakdown cost;
  CompactStats stats;
};

/// Builds (with pruning, fixing and symmetry rows as configured) and solves the model,
/// then decodes the incumbent. The decoded schedule is checked for feasibility and for
/// agreement with the solver objective; a mismatch throws std::logic_error.
CompactResult solve_compact(const core::Instance& inst, core::Variant variant, const CompactOptions& opts = {});

/// List schedule on built.instance: trucks ordered by their LP start estimate,
/// scenarios tried by decreasing eta.
core::Schedule lp_guided_schedule(const BuildResult& built, const std::vector<double>& x);

std::string stats_csv_header();
/// instance,variant,nodes,status,gap,seconds
std::string stats_csv_row(const CompactStats& s);

}  // namespace dats::compact
