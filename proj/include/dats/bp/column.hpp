#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dats/compact/model.hpp"
#include "dats/core/types.hpp"

namespace dats::bp {

/// Arc (from, to, t, s) in the model numbering of compact::VarIndex.
struct ArcKey {
  int from;
  int to;
  core::Period t;
  int s;
  auto operator<=>(const ArcKey&) const = default;
};

/// A complete multi-dock schedule used as a master column.
struct PseudoSchedule {
  std::vector<ArcKey> arcs;  // sorted
  std::vector<char> served;  // per model truck 1..n, stored at index truck - 1
  long cost = 0;             // waiting plus miss penalties
  std::uint64_t fingerprint = 0;
  core::Schedule schedule;   // on the model's (pruned) instance
};

/// Order-independent hash of the arc set.
std::uint64_t fingerprint(const std::vector<ArcKey>& arcs);

/// Column of a feasible schedule on built.instance; nullopt when the schedule uses an
/// arc the model does not have.
std::optional<PseudoSchedule> make_column(const compact::BuildResult& built, const core::Schedule& sched);

/// Chronological fill on built.instance. Always succeeds: falls back to the
/// all-unserved schedule.
PseudoSchedule initial_column(const compact::BuildResult& built);

/// Schedule with every truck unserved.
PseudoSchedule empty_column(const compact::BuildResult& built);

/// Columns deduplicated by arc set.
class ColumnPool {
 public:
  /// False when a column with the same arc set is already present.
  bool add(PseudoSchedule col);
  const std::vector<PseudoSchedule>& columns() const { return cols_; }
  std::size_t size() const { return cols_.size(); }

 private:
  std::vector<PseudoSchedule> cols_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash_;
};

}  // namespace dats::bp
