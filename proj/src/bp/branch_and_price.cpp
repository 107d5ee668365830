#include "dats/bp/branch_and_price.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dats/bp/column.hpp"
#include "dats/bp/master.hpp"
#include "dats/bp/pricing.hpp"
#include "dats/compact/solve.hpp"
#include "dats/core/dominance.hpp"
#include "dats/core/evaluate.hpp"
#include "dats/milp/mip.hpp"

namespace dats::bp {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kRcCut = -1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct MasterNode {
  std::vector<ArcFix> fixes;
  double bound;
};

struct PriceOutcome {
  int added = 0;
  bool complete = false;
  double bound = -kInf;  // proven minimum reduced cost when complete
};

class Driver {
 public:
  Driver(const core::Instance& inst, core::Variant variant, const BpOptions& opts)
      : inst_(inst), opts_(opts), built_(compact::build(inst, variant, opts.build)), t0_(Clock::now()) {
    stats_.instance = inst.name;
    stats_.variant = variant;
  }

  BpResult run();

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - t0_).count(); }
  double remaining() const { return opts_.time_limit > 0 ? opts_.time_limit - elapsed() : 0.0; }
  bool out_of_time() const { return opts_.time_limit > 0 && elapsed() >= opts_.time_limit; }
  void offer(std::size_t col);
  PriceOutcome price(const Duals& duals, const std::vector<ArcFix>& fixes);
  milp::MipResult price_once(const Pricing& pr);

  const core::Instance& inst_;
  const BpOptions& opts_;
  compact::BuildResult built_;
  Clock::time_point t0_;
  ColumnPool pool_;
  BpStats stats_;
  core::Cost best_ = std::numeric_limits<core::Cost>::max();
  std::size_t best_col_ = 0;
};

void Driver::offer(std::size_t col) {
  const PseudoSchedule& c = pool_.columns()[col];
  if (c.cost < best_) {
    best_ = c.cost;
    best_col_ = col;
  }
}

milp::MipResult Driver::price_once(const Pricing& pr) {
  milp::SearchOptions so;
  so.cutoff = kRcCut;
  so.pool_threshold = opts_.pool_threshold;
  so.target = kRcCut;
  so.target_min_nodes = opts_.pricing_node_budget;
  if (opts_.time_limit > 0) so.time_limit = std::max(remaining(), 1e-3);
  const bool cuts = opts_.combinatorial_cuts;
  so.separate_fractional = cuts;
  so.lazy = [this, cuts](const std::vector<double>& x, bool integral) {
    std::vector<milp::Row> rows;
    if (integral) {
      for (const TriCycleCut& c : separate_tricycle(built_, x)) rows.push_back(tricycle_row(built_, c));
    }
    if (cuts) {
      for (milp::Row& r : compact::separate_combinatorial(built_, x)) rows.push_back(std::move(r));
    }
    return rows;
  };
  so.heuristic = [this, &pr](const std::vector<double>& x) -> std::optional<std::vector<double>> {
    auto enc = compact::encode(built_, compact::lp_guided_schedule(built_, x));
    if (!enc) return std::nullopt;
    return extend_to_pricing(built_, pr, std::move(*enc));
  };
  ++stats_.pricing_calls;
  return milp::solve_mip(pr.model, so);
}

PriceOutcome Driver::price(const Duals& duals, const std::vector<ArcFix>& fixes) {
  const Pricing pr = build_pricing(built_, duals, fixes);
  const milp::MipResult mip = price_once(pr);
  PriceOutcome out;
  auto harvest = [&](const std::vector<double>& x) {
    auto col = make_column(built_, compact::decode(built_, x));
    if (!col) throw std::logic_error("pricing solution outside the model");
    if (pool_.add(std::move(*col))) {
      ++out.added;
      ++stats_.columns;
      offer(pool_.size() - 1);
    }
  };
  if (mip.has_incumbent() && mip.objective < kRcCut) harvest(mip.x);
  for (const milp::PoolEntry& e : mip.pool) {
    if (e.objective <= opts_.pool_threshold) harvest(e.x);
  }
  if (mip.status == milp::MipStatus::kOptimal || mip.status == milp::MipStatus::kInfeasible) {
    out.complete = true;
    out.bound = mip.bound;
  }
  return out;
}

BpResult Driver::run() {
  pool_.add(initial_column(built_));
  pool_.add(empty_column(built_));
  for (std::size_t k = 0; k < pool_.size(); ++k) offer(k);
  stats_.columns = static_cast<long>(pool_.size());
  stats_.min_reduced_cost = kInf;

  std::deque<MasterNode> open;
  open.push_back({{}, -kInf});
  bool stopped = false;
  bool stalled = false;
  bool all_certified = true;
  double closed_bound = kInf;  // lowest bound among nodes closed without proof

  while (!open.empty() && !stopped) {
    MasterNode node = std::move(open.front());
    open.pop_front();
    if (std::ceil(node.bound - 1e-6) >= static_cast<double>(best_)) continue;
    ++stats_.master_nodes;
    const bool root = stats_.master_nodes == 1;

    Rmp rmp;
    RmpLp lp;
    double last_obj = kInf;
    double last_move = elapsed();
    bool converged = false;
    for (;;) {
      rmp = build_rmp(built_, pool_.columns(), node.fixes);
      lp = solve_rmp_lp(built_, rmp);
      if (lp.objective < last_obj - 1e-9) {
        last_obj = lp.objective;
        last_move = elapsed();
      }
      if (out_of_time()) break;
      if (opts_.stall_time > 0 && elapsed() - last_move > opts_.stall_time) {
        stalled = true;
        break;
      }
      const PriceOutcome po = price(lp.duals, node.fixes);
      if (po.added > 0) continue;
      if (po.complete) {
        converged = true;
        stats_.min_reduced_cost = std::min(stats_.min_reduced_cost, po.bound);
        if (po.bound < kRcCut) all_certified = false;
      }
      break;
    }
    if (!converged) {
      stopped = true;
      open.push_front({node.fixes, node.bound});
      break;
    }
    if (lp.artificial_used) continue;  // no column satisfies the fixes
    const double lb = std::max(node.bound, lp.objective);
    if (root) stats_.bound = lb;
    if (std::ceil(lb - 1e-6) >= static_cast<double>(best_)) {
      if (root) stats_.root_gap = static_cast<double>(best_) - lp.objective;
      continue;
    }

    milp::SearchOptions so;
    so.cutoff = static_cast<double>(best_) - 0.5;
    if (opts_.time_limit > 0) so.time_limit = std::max(remaining(), 1e-3);
    const milp::MipResult mip = milp::solve_mip(rmp.model, so);
    if (mip.has_incumbent()) {
      std::size_t pick = 0;
      for (std::size_t k = 1; k < rmp.lambda.size(); ++k) {
        if (mip.x[static_cast<std::size_t>(rmp.lambda[k])] > mip.x[static_cast<std::size_t>(rmp.lambda[pick])]) pick = k;
      }
      offer(pick);
    }
    if (root) stats_.root_gap = static_cast<double>(best_) - lp.objective;
    if (std::ceil(lb - 1e-6) >= static_cast<double>(best_)) continue;
    if (out_of_time()) {
      stopped = true;
      open.push_front({node.fixes, lb});
      break;
    }

    int branch_var = -1;
    double best_frac = 1e-6;
    for (const auto& [var, x] : rmp.x_of_arc) {
      const double v = lp.lp.x[static_cast<std::size_t>(x)];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch_var = var;
      }
    }
    if (branch_var < 0) {
      // Integral arcs but a bound the master MIP could not reach: nothing left to split.
      all_certified = false;
      closed_bound = std::min(closed_bound, lb);
      continue;
    }
    MasterNode down{node.fixes, lb};
    down.fixes.push_back({branch_var, false});
    MasterNode up{node.fixes, lb};
    up.fixes.push_back({branch_var, true});
    open.push_back(std::move(down));
    open.push_back(std::move(up));
  }

  double bound = std::min(closed_bound, static_cast<double>(best_));
  for (const MasterNode& n : open) bound = std::min(bound, std::ceil(n.bound - 1e-6));

  BpResult out;
  core::Schedule sched = pool_.columns()[best_col_].schedule;
  sched = core::restore_scenario_indices(inst_, built_.prune, std::move(sched));
  if (!core::check_feasibility(inst_, sched).empty()) throw std::logic_error("bp: incumbent infeasible");
  out.cost = core::evaluate(inst_, sched);
  if (out.cost.total() != best_) throw std::logic_error("bp: incumbent cost differs from its column");
  out.schedule = std::move(sched);

  stats_.objective = static_cast<double>(best_);
  stats_.bound = std::isfinite(bound) ? bound : stats_.objective;
  stats_.gap = stats_.objective - stats_.bound;
  if (stalled) {
    stats_.status = core::SolveStatus::kFeasible;
  } else if (stopped) {
    stats_.status = core::SolveStatus::kLimit;
  } else {
    stats_.status = stats_.gap < 1.0 ? core::SolveStatus::kOptimal : core::SolveStatus::kFeasible;
  }
  if (!std::isfinite(stats_.min_reduced_cost)) stats_.min_reduced_cost = -kInf;
  stats_.certified = stats_.status == core::SolveStatus::kOptimal && all_certified &&
                     stats_.min_reduced_cost >= kRcCut && stats_.gap < 1.0;
  stats_.seconds = elapsed();
  out.stats = stats_;
  return out;
}

}  // namespace

BpResult branch_and_price(const core::Instance& inst, core::Variant variant, const BpOptions& opts) {
  if (opts.time_limit < 0 || opts.stall_time < 0 || opts.pricing_node_budget < 0) {
    throw std::invalid_argument("branch_and_price: negative limit");
  }
  if (!(opts.pool_threshold <= kRcCut)) throw std::invalid_argument("branch_and_price: pool threshold above -1e-6");
  Driver d(inst, variant, opts);
  return d.run();
}

std::string stats_csv_header() { return "instance,master_nodes,pricing_calls,columns,status,gap,seconds"; }

std::string stats_csv_row(const BpStats& s) {
  std::ostringstream os;
  os << s.instance << ',' << s.master_nodes << ',' << s.pricing_calls << ',' << s.columns << ','
     << core::status_name(s.status) << ',';
  if (s.status != core::SolveStatus::kOptimal) {
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

}  // namespace dats::bp
