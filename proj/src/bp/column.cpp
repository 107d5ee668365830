#include "dats/bp/column.hpp"

#include <algorithm>
#include <stdexcept>

#include "dats/core/evaluate.hpp"
#include "dats/core/greedy.hpp"

namespace dats::bp {

std::uint64_t fingerprint(const std::vector<ArcKey>& arcs) {
  std::vector<ArcKey> sorted = arcs;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (const ArcKey& a : sorted) {
    mix(static_cast<std::uint64_t>(a.from));
    mix(static_cast<std::uint64_t>(a.to));
    mix(static_cast<std::uint64_t>(a.t));
    mix(static_cast<std::uint64_t>(a.s + 1));
  }
  return h;
}

std::optional<PseudoSchedule> make_column(const compact::BuildResult& built, const core::Schedule& sched) {
  const auto x = compact::encode(built, sched);
  if (!x) return std::nullopt;
  if (!core::check_feasibility(built.instance, sched).empty()) {
    throw std::logic_error("make_column: infeasible schedule");
  }
  PseudoSchedule col;
  for (const compact::Arc& a : built.index.arcs()) {
    if ((*x)[static_cast<std::size_t>(a.var)] > 0.5) col.arcs.push_back({a.from, a.to, a.t, a.s});
  }
  std::sort(col.arcs.begin(), col.arcs.end());
  col.served.assign(built.instance.trucks.size(), 1);
  for (std::size_t p = 0; p < built.instance.trucks.size(); ++p) {
    if (sched.unserved.count(built.instance.trucks[p].id)) col.served[p] = 0;
  }
  col.cost = core::evaluate(built.instance, sched).total();
  col.fingerprint = fingerprint(col.arcs);
  col.schedule = sched;
  return col;
}

PseudoSchedule empty_column(const compact::BuildResult& built) {
  auto col = make_column(built, core::Schedule::empty_for(built.instance));
  if (!col) throw std::logic_error("empty_column: model lacks the empty schedule");
  return *col;
}

PseudoSchedule initial_column(const compact::BuildResult& built) {
  if (auto col = make_column(built, core::chronological_fill(built.instance))) return *col;
  return empty_column(built);
}

bool ColumnPool::add(PseudoSchedule col) {
  auto& bucket = by_hash_[col.fingerprint];
  for (std::size_t idx : bucket) {
    if (cols_[idx].arcs == col.arcs) return false;
  }
  bucket.push_back(cols_.size());
  cols_.push_back(std::move(col));
  return true;
}

}  // namespace dats::bp
