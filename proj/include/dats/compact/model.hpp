#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dats/core/dominance.hpp"
#include "dats/core/types.hpp"
#include "dats/milp/model.hpp"

namespace dats::compact {

/// Model trucks are numbered 1..n after the instance's truck order; 0 is the dummy
/// truck opening and closing each dock chain.
inline constexpr int kDummy = 0;
/// Scenario slot of arcs that carry none: arcs into the dummy, and every arc under SiPT.
inline constexpr int kNoScenario = -1;

struct Arc {
  int from;
  int to;
  core::Period t;
  int s;
  int var;
};

struct YVar {
  int truck;
  core::Period t;
  int s;
  int var;
};

/// Variable ids of the materialised index tuples.
class VarIndex {
 public:
  VarIndex() = default;
  VarIndex(int trucks, core::Period horizon);

  std::optional<int> x(int from, int to, core::Period t, int s) const;
  std::optional<int> y(int truck, core::Period t, int s) const;
  int eta(int truck, int s) const { return eta_[static_cast<std::size_t>(truck - 1)][static_cast<std::size_t>(s)]; }
  int z(int truck) const { return z_[static_cast<std::size_t>(truck - 1)]; }
  int x000() const { return x000_; }

  int trucks() const { return trucks_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<YVar>& ys() const { return ys_; }
  /// Positions in arcs() of the arcs entering / leaving a truck (0 = dummy).
  const std::vector<int>& into(int truck) const { return into_[static_cast<std::size_t>(truck)]; }
  const std::vector<int>& out_of(int truck) const { return out_[static_cast<std::size_t>(truck)]; }

  void add_arc(const Arc& a);
  void add_y(const YVar& y);
  void set_eta(int truck, std::vector<int> ids) { eta_[static_cast<std::size_t>(truck - 1)] = std::move(ids); }
  void set_z(int truck, int id) { z_[static_cast<std::size_t>(truck - 1)] = id; }
  void set_x000(int id) { x000_ = id; }

 private:
  int trucks_ = 0;
  core::Period horizon_ = 0;
  std::vector<Arc> arcs_;
  std::vector<YVar> ys_;
  std::unordered_map<std::uint64_t, int> arc_map_;
  std::unordered_map<std::uint64_t, int> y_map_;
  std::vector<std::vector<int>> into_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> eta_;
  std::vector<int> z_;
  int x000_ = -1;
};

struct BuildOptions {
  bool prune = true;      // remove dominated scenarios first
  bool fixing = true;     // fix arcs and y outside their feasible ranges
  bool symmetry = true;   // dummy-end arcs fire exactly at the finish period
  bool occupancy = true;  // at most |D| trucks hold a dock in any period
  /// Per-arc sequencing and per-start y-linking rows instead of the aggregated forms.
  bool literal = false;
};

/// Counts of index tuples left out of the model, by the first rule that applies.
struct FixingReport {
  long case1 = 0;  // t > d_j
  long case2 = 0;  // t < r_j
  long case3 = 0;  // t < r_i + setup_i + min processing_i
  long case4 = 0;  // t + setup_j + p_j^s > d_j
  long case5 = 0;  // from the dummy and t + p_j^s + setup_j > T
  long y_window = 0;      // y outside (r_j + setup_j, d_j]
  long dummy_copies = 0;  // scenario copies of arcs into the dummy
  long total() const { return case1 + case2 + case3 + case4 + case5 + y_window + dummy_copies; }
};

/// Rule (1..5) that fixes arc x(from, to, t, s) to zero, or 0 when it stays.
/// `s` is a scenario of `to` (ignored for the dummy and under SiPT).
int fixing_rule(const core::Instance& inst, core::Variant variant, int from, int to, core::Period t, int s);

struct BuildResult {
  milp::ModelIR model;
  VarIndex index;
  core::Instance instance;  // the instance the model was built on (pruned when requested)
  core::PruneReport prune;
  core::Variant variant = core::Variant::kSdPT;
  FixingReport fixing;
  int symmetry_rows = 0;
};

/// Throws core::ValidationError on an invalid instance and std::invalid_argument when
/// SiPT is requested for an instance whose scenario processing times differ.
BuildResult build(const core::Instance& inst, core::Variant variant, const BuildOptions& opts = {});

/// Adds x(i,0,t) <= sum_s sum_l x(l,i,t - p_i^s - setup_i, s); arcs whose right side is
/// empty get upper bound 0 instead. Returns the number of rows added.
int add_symmetry(BuildResult& built);

/// Cover cuts on y at period t: for each resource, trucks are taken by decreasing y of
/// their best scenario until the demand exceeds the capacity, and the cut
/// sum_{j in P} sum_{s: demand >= chosen} y(j,t,s) <= |P| - 1 is returned when violated.
std::vector<milp::Row> separate_combinatorial(const BuildResult& built, const std::vector<double>& values,
                                              core::Period t);
std::vector<milp::Row> separate_combinatorial(const BuildResult& built, const std::vector<double>& values);

/// Follows each dock chain from its dummy-out arc. Scenario indices refer to
/// built.instance. Throws std::logic_error on a broken chain.
core::Schedule decode(const BuildResult& built, const std::vector<double>& values);

/// Variable vector of a schedule on built.instance; nullopt when an arc it needs was
/// not materialised.
std::optional<std::vector<double>> encode(const BuildResult& built, const core::Schedule& sched);

}  // namespace dats::compact
