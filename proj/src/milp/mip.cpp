#include "dats/milp/mip.hpp"

#include <cmath>
#include <deque>
#include <memory>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "simplex.hpp"

namespace dats::milp {

const char* mip_status_name(MipStatus s) {
  switch (s) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kFeasible:
      return "feasible";
    case MipStatus::kInfeasible:
      return "infeasible";
    case MipStatus::kLimit:
      return "limit";
  }
  return "?";
}

namespace {

using detail::Basis;
using detail::Clock;

constexpr double kIntTol = 1e-6;
constexpr double kFeasTol = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct BoundChange {
  int var;
  double lb;
  double ub;
};

struct Node {
  std::vector<BoundChange> changes;  // cumulative from the root
  std::shared_ptr<const Basis> basis;
  double bound;
  long seq;
  // branching that created the node, for pseudocost updates
  int var = -1;
  bool up = false;
  double dist = 0.0;
  double parent_obj = 0.0;
};

struct Pseudocost {
  double sum[2] = {0.0, 0.0};
  int count[2] = {0, 0};
};

constexpr int kReliable = 4;
constexpr int kStrongCandidates = 8;
constexpr int kStrongLookahead = 4;
constexpr long kStrongIterations = 40;

struct NodeLess {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

class NodeQueue {
 public:
  explicit NodeQueue(NodeOrder order) : order_(order) {}

  void push(Node n) {
    if (order_ == NodeOrder::kBestBound) {
      heap_.push(std::move(n));
    } else {
      list_.push_back(std::move(n));
    }
  }

  Node pop() {
    Node n;
    if (order_ == NodeOrder::kBestBound) {
      n = heap_.top();
      heap_.pop();
    } else if (order_ == NodeOrder::kBreadthFirst) {
      n = std::move(list_.front());
      list_.pop_front();
    } else {
      n = std::move(list_.back());
      list_.pop_back();
    }
    return n;
  }

  bool empty() const { return heap_.empty() && list_.empty(); }

  double min_bound() const {
    double b = kInf;
    if (!heap_.empty()) b = heap_.top().bound;
    for (const Node& n : list_) b = std::min(b, n.bound);
    return b;
  }

 private:
  NodeOrder order_;
  std::deque<Node> list_;
  std::priority_queue<Node, std::vector<Node>, NodeLess> heap_;
};

std::size_t hash_values(const std::vector<double>& x) {
  std::size_t h = 1469598103934665603ULL;
  for (double v : x) {
    const auto q = static_cast<long long>(std::llround(v * 1e6));
    h ^= std::hash<long long>{}(q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

class BranchAndBound {
 public:
  BranchAndBound(const ModelIR& model, const SearchOptions& opts)
      : model_(model),
        opts_(opts),
        lp_(model),
        integral_obj_(model.integral_objective()),
        pseudo_(model.vars.size()) {
    deadline_ = opts.time_limit > 0 ? Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                         std::chrono::duration<double>(opts.time_limit))
                                    : Clock::time_point::max();
  }

  MipResult run();

 private:
  double prune_level() const {
    double level = opts_.cutoff;
    if (result_.has_incumbent()) {
      const double gap = std::max(opts_.abs_gap, opts_.rel_gap * std::abs(result_.objective));
      level = std::min(level, integral_obj_ ? result_.objective : result_.objective - gap);
    }
    return level;
  }
  double rounded(double lp_obj) const { return integral_obj_ ? std::ceil(lp_obj - 1e-6) : lp_obj; }
  bool pruned(double node_bound) const { return node_bound >= prune_level(); }

  void add_rows(std::vector<Row> rows);
  bool satisfies_all(const std::vector<double>& x) const;
  bool try_candidate(std::vector<double> x);
  void accept(std::vector<double> x);
  void apply_bounds(const std::vector<BoundChange>& changes);
  int branching_variable(const std::vector<double>& x, double obj);
  void record(int var, bool up, double dist, double gain);
  double pseudo_gain(int var, bool up) const;
  double probe(int var, double lb, double ub, double obj);

  const ModelIR& model_;
  const SearchOptions& opts_;
  detail::Simplex lp_;
  bool integral_obj_;
  Clock::time_point deadline_;
  MipResult result_;
  std::vector<int> touched_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> pool_index_;
  double gap_pruned_bound_ = kInf;
  std::vector<Pseudocost> pseudo_;
  double pseudo_total_[2] = {0.0, 0.0};
  int pseudo_count_[2] = {0, 0};
};

void BranchAndBound::add_rows(std::vector<Row> rows) {
  for (const Row& r : rows) {
    for (const Term& t : r.terms) {
      if (t.var < 0 || t.var >= model_.num_vars()) throw std::invalid_argument("lazy row: unknown variable");
    }
  }
  lp_.add_rows(rows);
  for (Row& r : rows) result_.added_rows.push_back(std::move(r));
}

bool BranchAndBound::satisfies_all(const std::vector<double>& x) const {
  if (model_.max_violation(x) > kFeasTol) return false;
  for (const Row& r : result_.added_rows) {
    if (row_violation(r, x) > kFeasTol) return false;
  }
  return true;
}

// External candidate (warm start or heuristic). Lazy rows it triggers are kept.
bool BranchAndBound::try_candidate(std::vector<double> x) {
  if (x.size() != model_.vars.size()) return false;
  if (model_.max_fractionality(x) > kIntTol) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (model_.vars[j].integer) x[j] = std::round(x[j]);
  }
  if (!satisfies_all(x)) return false;
  if (opts_.lazy) {
    auto rows = opts_.lazy(x, true);
    if (!rows.empty()) {
      add_rows(std::move(rows));
      return false;
    }
  }
  accept(std::move(x));
  return true;
}

void BranchAndBound::accept(std::vector<double> x) {
  const double obj = model_.objective(x);
  const bool improving = obj < opts_.cutoff && (!result_.has_incumbent() || obj < result_.objective - 1e-9);
  const bool pooled = opts_.pool_threshold && obj <= *opts_.pool_threshold;
  if (improving || pooled) {
    const std::size_t h = hash_values(x);
    auto& bucket = pool_index_[h];
    bool seen = false;
    for (std::size_t idx : bucket) {
      if (result_.pool[idx].x == x) seen = true;
    }
    if (!seen) {
      bucket.push_back(result_.pool.size());
      result_.pool.push_back({x, obj});
    }
  }
  if (improving) {
    result_.objective = obj;
    result_.x = std::move(x);
  }
}

void BranchAndBound::apply_bounds(const std::vector<BoundChange>& changes) {
  for (int j : touched_) {
    const Variable& v = model_.vars[static_cast<std::size_t>(j)];
    lp_.set_bounds(j, v.lb, v.ub);
  }
  touched_.clear();
  for (const BoundChange& c : changes) {
    lp_.set_bounds(c.var, c.lb, c.ub);
    touched_.push_back(c.var);
  }
}

void BranchAndBound::record(int var, bool up, double dist, double gain) {
  if (dist < kIntTol) return;
  const double unit = std::max(gain, 0.0) / dist;
  Pseudocost& p = pseudo_[static_cast<std::size_t>(var)];
  p.sum[up] += unit;
  ++p.count[up];
  pseudo_total_[up] += unit;
  ++pseudo_count_[up];
}

double BranchAndBound::pseudo_gain(int var, bool up) const {
  const Pseudocost& p = pseudo_[static_cast<std::size_t>(var)];
  if (p.count[up] > 0) return p.sum[up] / p.count[up];
  if (pseudo_count_[up] > 0) return pseudo_total_[up] / pseudo_count_[up];
  return 1.0;
}

// Objective of a child after a capped dual simplex run; infinite when the child is
// infeasible or cut off. The LP state is rolled back afterwards.
double BranchAndBound::probe(int var, double lb, double ub, double obj) {
  const auto snap = lp_.save();
  const double old_lb = lp_.lower(var);
  const double old_ub = lp_.upper(var);
  lp_.set_bounds(var, lb, ub);
  double lp_cut = prune_level();
  if (std::isfinite(lp_cut)) lp_cut = integral_obj_ ? lp_cut - 1.0 + 1e-6 : lp_cut;
  lp_cut -= model_.obj_offset;
  lp_.set_iteration_cap(kStrongIterations);
  const LpStatus st = lp_.solve(LpAlgorithm::kDual, lp_cut, deadline_);
  lp_.set_iteration_cap(0);
  double child = obj;
  if (st == LpStatus::kInfeasible || st == LpStatus::kCutoff) {
    child = kInf;
  } else if (st == LpStatus::kOptimal || st == LpStatus::kIterationLimit) {
    child = std::max(obj, lp_.objective() + model_.obj_offset);
  }
  lp_.set_bounds(var, old_lb, old_ub);
  lp_.restore(snap);
  return child;
}

// Highest priority class first. Within it, product of estimated down and up gains;
// candidates without reliable pseudocosts are probed with a few dual iterations.
int BranchAndBound::branching_variable(const std::vector<double>& x, double obj) {
  std::vector<int> cands;
  int top = 0;
  for (int j = 0; j < model_.num_vars(); ++j) {
    const Variable& v = model_.vars[static_cast<std::size_t>(j)];
    if (!v.integer) continue;
    const double xj = x[static_cast<std::size_t>(j)];
    const double frac = std::min(xj - std::floor(xj), std::ceil(xj) - xj);
    if (frac <= kIntTol) continue;
    if (cands.empty() || v.priority > top) {
      cands.clear();
      top = v.priority;
    }
    if (v.priority == top) cands.push_back(j);
  }
  if (cands.empty()) return -1;
  auto frac_of = [&](int j) {
    const double xj = x[static_cast<std::size_t>(j)];
    return std::min(xj - std::floor(xj), std::ceil(xj) - xj);
  };
  std::vector<int> unreliable;
  for (int j : cands) {
    const Pseudocost& p = pseudo_[static_cast<std::size_t>(j)];
    if (std::min(p.count[0], p.count[1]) < kReliable) unreliable.push_back(j);
  }
  std::stable_sort(unreliable.begin(), unreliable.end(), [&](int a, int b) { return frac_of(a) > frac_of(b); });
  if (unreliable.size() > static_cast<std::size_t>(kStrongCandidates)) unreliable.resize(kStrongCandidates);

  const double cap = std::isfinite(prune_level()) ? std::max(prune_level() - obj, 1.0) : 1e6;
  auto score = [](double down, double up) { return std::max(down, 1e-6) * std::max(up, 1e-6); };
  int best = -1;
  double best_score = -1.0;
  std::vector<char> probed(static_cast<std::size_t>(model_.num_vars()), 0);
  int stale = 0;
  for (int j : unreliable) {
    const double xj = x[static_cast<std::size_t>(j)];
    const double lo = lp_.lower(j);
    const double hi = lp_.upper(j);
    const double down = probe(j, lo, std::floor(xj), obj);
    const double up = probe(j, std::ceil(xj), hi, obj);
    const double gd = std::isfinite(down) ? down - obj : cap;
    const double gu = std::isfinite(up) ? up - obj : cap;
    if (std::isfinite(down)) record(j, false, xj - std::floor(xj), gd);
    if (std::isfinite(up)) record(j, true, std::ceil(xj) - xj, gu);
    probed[static_cast<std::size_t>(j)] = 1;
    const double sc = score(gd, gu);
    if (sc > best_score) {
      best_score = sc;
      best = j;
      stale = 0;
    } else if (++stale >= kStrongLookahead) {
      break;
    }
    if (Clock::now() > deadline_) break;
  }
  for (int j : cands) {
    if (probed[static_cast<std::size_t>(j)]) continue;
    const double xj = x[static_cast<std::size_t>(j)];
    const double sc = score(pseudo_gain(j, false) * (xj - std::floor(xj)), pseudo_gain(j, true) * (std::ceil(xj) - xj));
    if (sc > best_score + 1e-12) {
      best_score = sc;
      best = j;
    }
  }
  return best;
}

MipResult BranchAndBound::run() {
  for (const auto& w : opts_.warm_starts) try_candidate(w);

  NodeQueue queue(opts_.order);
  long seq = 0;
  queue.push(Node{{}, nullptr, -kInf, seq++});
  bool stopped = false;
  bool time_out = false;
  double open_bound = kInf;

  while (!queue.empty()) {
    if (Clock::now() > deadline_) {
      stopped = time_out = true;
      break;
    }
    if (opts_.node_limit > 0 && result_.nodes >= opts_.node_limit) {
      stopped = true;
      break;
    }
    if (result_.has_incumbent() && result_.objective <= opts_.target && result_.nodes >= opts_.target_min_nodes) {
      stopped = true;
      break;
    }
    Node node = queue.pop();
    if (pruned(node.bound)) {
      gap_pruned_bound_ = std::min(gap_pruned_bound_, node.bound);
      continue;
    }
    apply_bounds(node.changes);
    // The current basis stays dual feasible under bound changes; the stored parent
    // basis is only needed when the dual simplex fails from it.
    const bool root = node.basis == nullptr;
    ++result_.nodes;

    int cut_rounds = 0;
    LpAlgorithm algo = LpAlgorithm::kDual;
    for (;;) {
      double lp_cut = prune_level();
      if (std::isfinite(lp_cut)) lp_cut = integral_obj_ ? lp_cut - 1.0 + 1e-6 : lp_cut;
      lp_cut -= model_.obj_offset;
      LpStatus st = lp_.solve(algo, lp_cut, deadline_);
      if (st == LpStatus::kNumericFailure && !root) {
        lp_.set_basis(*node.basis);
        st = lp_.solve(LpAlgorithm::kDual, lp_cut, deadline_);
      }
      if (st == LpStatus::kNumericFailure) {
        lp_.set_slack_basis();
        st = lp_.solve(LpAlgorithm::kPrimal, kInf, deadline_);
        if (st == LpStatus::kNumericFailure) throw std::runtime_error("LP relaxation failed numerically");
      }
      algo = LpAlgorithm::kDual;
      if (st == LpStatus::kTimeLimit) {
        stopped = time_out = true;
        open_bound = std::min(open_bound, node.bound);
        break;
      }
      if (st == LpStatus::kInfeasible) break;
      if (st == LpStatus::kCutoff) {
        gap_pruned_bound_ = std::min(gap_pruned_bound_, rounded(lp_.objective() + model_.obj_offset));
        break;
      }
      if (st == LpStatus::kUnbounded) throw std::runtime_error("LP relaxation unbounded");

      const double obj = lp_.objective() + model_.obj_offset;
      const double node_bound = std::max(node.bound, rounded(obj));
      if (pruned(node_bound)) {
        gap_pruned_bound_ = std::min(gap_pruned_bound_, node_bound);
        break;
      }
      if (node.var >= 0 && cut_rounds == 0) {
        record(node.var, node.up, node.dist, obj - node.parent_obj);
        node.var = -1;
      }
      std::vector<double> x = lp_.primal();
      if (model_.max_fractionality(x) <= kIntTol) {
        for (std::size_t j = 0; j < x.size(); ++j) {
          if (model_.vars[j].integer) x[j] = std::round(x[j]);
        }
        if (opts_.lazy) {
          auto rows = opts_.lazy(x, true);
          if (!rows.empty()) {
            add_rows(std::move(rows));
            continue;
          }
        }
        accept(std::move(x));
        break;
      }
      if (opts_.separate_fractional && opts_.lazy && cut_rounds < 20) {
        auto rows = opts_.lazy(x, false);
        if (!rows.empty()) {
          ++cut_rounds;
          add_rows(std::move(rows));
          continue;
        }
      }
      if (root && opts_.heuristic) {
        if (auto cand = opts_.heuristic(x)) {
          try_candidate(std::move(*cand));
          if (pruned(node_bound)) break;
        }
      }
      const int b = branching_variable(x, obj);
      if (Clock::now() > deadline_) {
        stopped = time_out = true;
        open_bound = std::min(open_bound, node_bound);
        break;
      }
      auto basis = std::make_shared<const Basis>(lp_.basis());
      const double v = x[static_cast<std::size_t>(b)];
      const Variable& var = model_.vars[static_cast<std::size_t>(b)];
      Node down{node.changes, basis, node_bound, 0};
      Node up{node.changes, basis, node_bound, 0};
      double cur_lb = var.lb;
      double cur_ub = var.ub;
      for (const BoundChange& c : node.changes) {
        if (c.var == b) {
          cur_lb = c.lb;
          cur_ub = c.ub;
        }
      }
      down.changes.push_back({b, cur_lb, std::floor(v)});
      up.changes.push_back({b, std::ceil(v), cur_ub});
      down.var = up.var = b;
      up.up = true;
      down.dist = v - std::floor(v);
      up.dist = std::ceil(v) - v;
      down.parent_obj = up.parent_obj = obj;
      if (opts_.order == NodeOrder::kDepthFirst) {
        up.seq = seq++;
        down.seq = seq++;
        queue.push(std::move(up));
        queue.push(std::move(down));
      } else {
        down.seq = seq++;
        up.seq = seq++;
        queue.push(std::move(down));
        queue.push(std::move(up));
      }
      break;
    }
    if (stopped) break;
  }

  result_.lp_iterations = lp_.iterations();
  open_bound = std::min(open_bound, queue.min_bound());
  if (stopped) {
    result_.bound = std::min({open_bound, gap_pruned_bound_, result_.objective});
    if (time_out) {
      result_.status = MipStatus::kLimit;
    } else {
      result_.status = result_.has_incumbent() ? MipStatus::kFeasible : MipStatus::kLimit;
    }
  } else if (result_.has_incumbent()) {
    result_.bound = std::min(result_.objective, gap_pruned_bound_);
    const double gap = std::max(opts_.abs_gap, opts_.rel_gap * std::abs(result_.objective));
    result_.status = result_.objective - result_.bound <= gap ? MipStatus::kOptimal : MipStatus::kFeasible;
  } else {
    // Everything pruned: infeasible, or nothing beats the external cutoff.
    result_.bound = std::isfinite(opts_.cutoff) ? opts_.cutoff : kInf;
    result_.status = MipStatus::kInfeasible;
  }

  std::vector<PoolEntry> kept;
  for (auto& e : result_.pool) {
    if (satisfies_all(e.x)) kept.push_back(std::move(e));
  }
  result_.pool = std::move(kept);
  return std::move(result_);
}

}  // namespace

MipResult solve_mip(const ModelIR& model, const SearchOptions& opts) {
  check_model(model);
  if (opts.time_limit < 0 || opts.node_limit < 0) throw std::invalid_argument("limits must be positive");
  BranchAndBound bb(model, opts);
  return bb.run();
}

}  // namespace dats::milp
