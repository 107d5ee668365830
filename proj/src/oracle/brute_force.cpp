#include "dats/oracle/brute_force.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "dats/core/evaluate.hpp"
#include "dats/core/greedy.hpp"

namespace dats::oracle {

using core::Cost;
using core::Instance;
using core::Period;
using core::Schedule;
using core::Truck;

namespace {

struct Placement {
  int scenario;
  int dock;
  Period start;
};

class Search {
 public:
  Search(const Instance& inst, bool exhaustive)
      : inst_(inst),
        exhaustive_(exhaustive),
        usage_(static_cast<std::size_t>(inst.horizon) + 2, {0, 0, 0}),
        busy_(static_cast<std::size_t>(inst.docks)),
        choice_(inst.trucks.size()) {}

  void seed(const Schedule& s, Cost cost) {
    best_ = s;
    best_cost_ = cost;
  }

  void run() { visit(0, 0, 0); }

  const Schedule& best() const { return best_; }
  long nodes() const { return nodes_; }

 private:
  bool dock_free(int dock, Period from, Period to) const {
    for (const auto& [a, b] : busy_[static_cast<std::size_t>(dock)]) {
      if (from < b && a < to) return false;
    }
    return true;
  }

  bool resources_fit(const core::ResourceScenario& s, Period first, Period last) const {
    for (Period p = first; p <= last; ++p) {
      const auto& u = usage_[static_cast<std::size_t>(p)];
      if (u[0] + s.workers > inst_.capacity.workers || u[1] + s.equipment > inst_.capacity.equipment ||
          u[2] + s.vehicles > inst_.capacity.vehicles) {
        return false;
      }
    }
    return true;
  }

  bool fits(const Truck& t, int s, int dock, Period start) const {
    const auto& sc = t.scenarios[static_cast<std::size_t>(s)];
    const Period end = start + t.setup + sc.processing;
    return dock_free(dock, start, end) && resources_fit(sc, start + t.setup + 1, end);
  }

  void apply(const Truck& t, int s, int dock, Period start, int sign) {
    const auto& sc = t.scenarios[static_cast<std::size_t>(s)];
    const Period end = start + t.setup + sc.processing;
    for (Period p = start + t.setup + 1; p <= end; ++p) {
      auto& u = usage_[static_cast<std::size_t>(p)];
      u[0] += sign * sc.workers;
      u[1] += sign * sc.equipment;
      u[2] += sign * sc.vehicles;
    }
    auto& b = busy_[static_cast<std::size_t>(dock)];
    if (sign > 0) {
      b.emplace_back(start, end);
    } else {
      b.pop_back();
    }
  }

  int dock_limit(int used) const { return exhaustive_ ? inst_.docks : std::min(inst_.docks, used + 1); }

  // Cheapest option of a truck given the current partial schedule.
  Cost cheapest(const Truck& t, int used) const {
    Cost best = t.miss_penalty;
    for (int s = 0; s < static_cast<int>(t.scenarios.size()); ++s) {
      for (int d = 0; d < dock_limit(used); ++d) {
        for (Period start = t.arrival; start <= t.latest_start(s); ++start) {
          const Cost c = t.wait_cost * (start - t.arrival);
          if (c >= best) break;
          if (fits(t, s, d, start)) {
            best = c;
            break;
          }
        }
        if (best == 0) return 0;
      }
    }
    return best;
  }

  void visit(std::size_t k, Cost cost, int used) {
    ++nodes_;
    if (k == inst_.trucks.size()) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        record();
      }
      return;
    }
    if (!exhaustive_) {
      Cost bound = cost;
      for (std::size_t r = k; r < inst_.trucks.size() && bound < best_cost_; ++r) {
        bound += cheapest(inst_.trucks[r], used);
      }
      if (bound >= best_cost_) return;
    }
    const Truck& t = inst_.trucks[k];
    for (int s = 0; s < static_cast<int>(t.scenarios.size()); ++s) {
      for (int d = 0; d < dock_limit(used); ++d) {
        for (Period start = t.arrival; start <= t.latest_start(s); ++start) {
          const Cost c = cost + t.wait_cost * (start - t.arrival);
          if (!exhaustive_ && c >= best_cost_) break;
          if (!fits(t, s, d, start)) continue;
          apply(t, s, d, start, +1);
          choice_[k] = Placement{s, d, start};
          visit(k + 1, c, std::max(used, d + 1));
          apply(t, s, d, start, -1);
        }
      }
    }
    choice_[k] = std::nullopt;
    visit(k + 1, cost + t.miss_penalty, used);
  }

  void record() {
    Schedule s;
    s.per_dock.assign(static_cast<std::size_t>(inst_.docks), {});
    for (std::size_t k = 0; k < inst_.trucks.size(); ++k) {
      const TruckId id = inst_.trucks[k].id;
      if (!choice_[k]) {
        s.unserved.insert(id);
        continue;
      }
      s.per_dock[static_cast<std::size_t>(choice_[k]->dock)].push_back({id, choice_[k]->scenario, choice_[k]->start});
    }
    for (auto& dock : s.per_dock) {
      std::sort(dock.begin(), dock.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
    }
    best_ = std::move(s);
  }

  using TruckId = core::TruckId;

  const Instance& inst_;
  bool exhaustive_;
  std::vector<std::array<int, 3>> usage_;
  std::vector<std::vector<std::pair<Period, Period>>> busy_;
  std::vector<std::optional<Placement>> choice_;
  Schedule best_;
  Cost best_cost_ = std::numeric_limits<Cost>::max();
  long nodes_ = 0;
};

}  // namespace

OracleResult brute_force(const Instance& inst, const OracleLimits& limits, bool exhaustive) {
  if (limits.max_trucks <= 0 || limits.max_horizon <= 0 || limits.max_scenarios <= 0 || limits.max_docks <= 0) {
    throw std::invalid_argument("oracle limits must be positive");
  }
  core::validate(inst);
  if (static_cast<int>(inst.trucks.size()) > limits.max_trucks) throw LimitError("oracle: too many trucks");
  if (inst.horizon > limits.max_horizon) throw LimitError("oracle: horizon too long");
  if (inst.docks > limits.max_docks) throw LimitError("oracle: too many docks");
  for (const auto& t : inst.trucks) {
    if (static_cast<int>(t.scenarios.size()) > limits.max_scenarios) throw LimitError("oracle: too many scenarios");
  }
  if (exhaustive && inst.trucks.size() > 3) throw LimitError("oracle: exhaustive mode needs at most 3 trucks");

  Search search(inst, exhaustive);
  if (!exhaustive) {
    const Schedule start = core::chronological_fill(inst);
    search.seed(start, core::evaluate(inst, start).total());
  }
  search.run();
  OracleResult out;
  out.schedule = search.best();
  out.nodes = search.nodes();
  if (!core::check_feasibility(inst, out.schedule).empty()) {
    throw std::logic_error("oracle produced an infeasible schedule");
  }
  out.cost = core::evaluate(inst, out.schedule);
  return out;
}

}  // namespace dats::oracle
