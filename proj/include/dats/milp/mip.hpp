#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "dats/milp/lp.hpp"
#include "dats/milp/model.hpp"

namespace dats::milp {

enum class NodeOrder { kBreadthFirst, kBestBound, kDepthFirst };
enum class MipStatus { kOptimal, kFeasible, kInfeasible, kLimit };
const char* mip_status_name(MipStatus s);

/// Called with node LP values. `integral` is true for integer-feasible candidates; the
/// returned rows must be valid for every feasible solution and are added globally.
using LazyCallback = std::function<std::vector<Row>(const std::vector<double>& x, bool integral)>;
/// Called with the root LP values; may return a full candidate vector.
using HeuristicCallback = std::function<std::optional<std::vector<double>>(const std::vector<double>& x)>;

struct SearchOptions {
  NodeOrder order = NodeOrder::kBreadthFirst;
  double time_limit = 0.0;  // seconds, 0 = none
  long node_limit = 0;      // 0 = none
  /// Stop with status kFeasible once an incumbent reaches `target` and at least
  /// `target_min_nodes` nodes were processed.
  double target = -std::numeric_limits<double>::infinity();
  long target_min_nodes = 0;
  double abs_gap = 1e-6;
  double rel_gap = 0.0;
  /// Keep every accepted integer solution with objective <= threshold.
  std::optional<double> pool_threshold;
  LazyCallback lazy;
  /// Also call `lazy` on fractional node solutions.
  bool separate_fractional = false;
  HeuristicCallback heuristic;
  std::vector<std::vector<double>> warm_starts;
  /// Known objective bound: nodes whose relaxation cannot beat it are dropped, and
  /// only solutions strictly below it become incumbents.
  double cutoff = std::numeric_limits<double>::infinity();
};

struct PoolEntry {
  std::vector<double> x;
  double objective;
};

struct MipResult {
  MipStatus status = MipStatus::kInfeasible;
  std::vector<double> x;  // empty without an incumbent
  double objective = std::numeric_limits<double>::infinity();
  double bound = -std::numeric_limits<double>::infinity();
  long nodes = 0;
  long lp_iterations = 0;
  std::vector<PoolEntry> pool;
  std::vector<Row> added_rows;  // lazy rows, in order of addition
  bool has_incumbent() const { return !x.empty(); }
};

/// LP-based branch-and-bound with reliability branching inside the highest priority
/// class: pseudocost products once both directions have enough observations, short
/// strong-branching probes before that, lowest id on ties. The down child goes first.
MipResult solve_mip(const ModelIR& model, const SearchOptions& opts = {});

/// Interface for delegating solves to another engine with the same contract.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual LpSolution lp(const ModelIR& model) = 0;
  virtual MipResult mip(const ModelIR& model, const SearchOptions& opts) = 0;
};

class BundledBackend : public SolverBackend {
 public:
  LpSolution lp(const ModelIR& model) override { return solve_lp(model); }
  MipResult mip(const ModelIR& model, const SearchOptions& opts) override { return solve_mip(model, opts); }
};

}  // namespace dats::milp
