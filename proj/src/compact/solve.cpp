#include "dats/compact/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dats/core/evaluate.hpp"
#include "dats/core/greedy.hpp"

namespace dats::compact {

using core::Instance;
using core::SolveStatus;

core::Schedule lp_guided_schedule(const BuildResult& built, const std::vector<double>& x) {
  const Instance& inst = built.instance;
  const VarIndex& ix = built.index;
  const std::size_t n = inst.trucks.size();
  std::vector<double> est(n, 0.0);
  std::vector<std::vector<int>> scen(n);
  for (std::size_t p = 0; p < n; ++p) {
    const int j = static_cast<int>(p) + 1;
    double w = 0.0;
    double tw = 0.0;
    for (int a : ix.into(j)) {
      const Arc& arc = ix.arcs()[static_cast<std::size_t>(a)];
      const double v = x[static_cast<std::size_t>(arc.var)];
      w += v;
      tw += v * arc.t;
    }
    est[p] = w > 1e-6 ? tw / w : static_cast<double>(inst.trucks[p].arrival) + 0.5;
    scen[p].resize(inst.trucks[p].scenarios.size());
    std::iota(scen[p].begin(), scen[p].end(), 0);
    std::stable_sort(scen[p].begin(), scen[p].end(), [&](int a, int b) {
      return x[static_cast<std::size_t>(ix.eta(j, a))] > x[static_cast<std::size_t>(ix.eta(j, b))];
    });
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return est[a] < est[b]; });
  return core::list_schedule(inst, order, scen);
}

namespace {

SolveStatus map_status(milp::MipStatus s) {
  switch (s) {
    case milp::MipStatus::kOptimal:
      return SolveStatus::kOptimal;
    case milp::MipStatus::kFeasible:
      return SolveStatus::kFeasible;
    case milp::MipStatus::kInfeasible:
      return SolveStatus::kInfeasible;
    case milp::MipStatus::kLimit:
      return SolveStatus::kLimit;
  }
  return SolveStatus::kLimit;
}

}  // namespace

CompactResult solve_compact(const Instance& inst, core::Variant variant, const CompactOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  BuildResult built = build(inst, variant, opts.build);

  milp::SearchOptions search;
  search.order = opts.order;
  search.time_limit = opts.time_limit;
  if (opts.warm_start) {
    if (auto w = encode(built, core::chronological_fill(built.instance))) search.warm_starts.push_back(std::move(*w));
  }
  if (opts.heuristic) {
    search.heuristic = [&built](const std::vector<double>& x) { return encode(built, lp_guided_schedule(built, x)); };
  }
  if (opts.combinatorial_cuts) {
    search.separate_fractional = true;
    search.lazy = [&built](const std::vector<double>& x, bool) { return separate_combinatorial(built, x); };
  }
  const milp::MipResult mip = milp::solve_mip(built.model, search);

  CompactResult out;
  CompactStats& st = out.stats;
  st.instance = inst.name;
  st.variant = variant;
  st.nodes = mip.nodes;
  st.status = map_status(mip.status);
  st.variables = built.model.num_vars();
  st.rows = built.model.num_rows() + static_cast<int>(mip.added_rows.size());
  st.lazy_rows = mip.added_rows.size();
  st.fixing = built.fixing;
  if (mip.has_incumbent()) {
    core::Schedule sched = decode(built, mip.x);
    sched = core::restore_scenario_indices(inst, built.prune, std::move(sched));
    if (!core::check_feasibility(inst, sched).empty()) throw std::logic_error("compact: decoded schedule infeasible");
    out.cost = core::evaluate(inst, sched);
    if (static_cast<double>(out.cost.total()) != std::round(mip.objective)) {
      throw std::logic_error("compact: decoded cost differs from the model objective");
    }
    out.schedule = std::move(sched);
    st.objective = static_cast<double>(out.cost.total());
    st.bound = std::min(mip.bound, st.objective);
    st.gap = st.objective - st.bound;
  } else {
    st.bound = mip.bound;
    st.gap = std::numeric_limits<double>::infinity();
  }
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string stats_csv_header() { return "instance,variant,nodes,status,gap,seconds"; }

std::string stats_csv_row(const CompactStats& s) {
  std::ostringstream os;
  os << s.instance << ',' << core::variant_name(s.variant) << ',' << s.nodes << ',' << core::status_name(s.status)
     << ',';
  if (s.status != SolveStatus::kOptimal) {
    if (std::isfinite(s.gap)) {
      os << s.gap;
    } else {
      os << "inf";
    }
  }
  os.precision(3);
  os << ',' << std::fixed << s.seconds;
  return os.str();
}

}  // namespace dats::compact
