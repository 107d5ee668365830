#include "simplex.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace dats::milp::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kVerifyTol = 1e-7;
constexpr std::size_t kRefactor = 40;
constexpr int kBlandAfter = 50;

// Right-looking elimination on a dense copy. Reports columns without a usable pivot and
// the rows never used as pivots.
void find_dependent(Eigen::MatrixXd k, std::vector<int>& dep_cols, std::vector<int>& free_rows) {
  const int size = static_cast<int>(k.rows());
  std::vector<char> used(static_cast<std::size_t>(size), 0);
  for (int c = 0; c < size; ++c) {
    int best = -1;
    double big = 1e-9;
    for (int i = 0; i < size; ++i) {
      if (!used[i] && std::abs(k(i, c)) > big) {
        big = std::abs(k(i, c));
        best = i;
      }
    }
    if (best < 0) {
      dep_cols.push_back(c);
      continue;
    }
    used[best] = 1;
    for (int i = 0; i < size; ++i) {
      if (used[i] || k(i, c) == 0.0) continue;
      const double f = k(i, c) / k(best, c);
      for (int c2 = c + 1; c2 < size; ++c2) k(i, c2) -= f * k(best, c2);
      k(i, c) = 0.0;
    }
  }
  for (int i = 0; i < size; ++i) {
    if (!used[i]) free_rows.push_back(i);
  }
}

}  // namespace

// Sparse LU of the kernel, with a dense fallback for badly conditioned matrices.
class KernelLu {
 public:
  bool factor(const Eigen::SparseMatrix<double>& k) {
    dense_.reset();
    size_ = k.rows();
    if (size_ == 0) return true;
    sparse_.compute(k);
    if (sparse_.info() != Eigen::Success) return false;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(size_);
    const Eigen::VectorXd b = k * ones;
    const Eigen::VectorXd x = sparse_.solve(b);
    return sparse_.info() == Eigen::Success && x.allFinite() && (x - ones).cwiseAbs().maxCoeff() < 1e-8;
  }

  void factor_dense(const Eigen::MatrixXd& k) {
    size_ = k.rows();
    dense_ = std::make_unique<Eigen::FullPivLU<Eigen::MatrixXd>>(k);
  }

  void solve(Eigen::VectorXd& v) const {
    if (size_ == 0) return;
    if (dense_) {
      v = dense_->solve(v);
    } else {
      v = sparse_.solve(v);
    }
  }

  void solve_transposed(Eigen::VectorXd& v) const {
    if (size_ == 0) return;
    if (dense_) {
      v = dense_->transpose().solve(v);
    } else {
      v = sparse_.transpose().solve(v);
    }
  }

 private:
  Eigen::Index size_ = 0;
  // transpose() is not const in Eigen 3.4
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> sparse_;
  std::unique_ptr<Eigen::FullPivLU<Eigen::MatrixXd>> dense_;
};

Simplex::Simplex(const ModelIR& model) : n_(model.num_vars()), m_(0), lu_(std::make_unique<KernelLu>()) {
  cols_.resize(static_cast<std::size_t>(n_));
  for (const Variable& v : model.vars) {
    lb_.push_back(v.lb);
    ub_.push_back(v.ub);
    cost_.push_back(v.obj);
    state_.push_back(VarState::kLower);
    x_.push_back(v.lb);
    pos_.push_back(-1);
  }
  add_rows(model.rows);
  set_slack_basis();
}

Simplex::~Simplex() = default;

void Simplex::add_rows(const std::vector<Row>& rows) {
  for (const Row& row : rows) {
    std::map<int, double> merged;
    for (const Term& t : row.terms) merged[t.var] += t.coef;
    std::vector<std::pair<int, double>> list;
    for (const auto& [j, v] : merged) {
      if (v == 0.0) continue;
      list.emplace_back(j, v);
      cols_[static_cast<std::size_t>(j)].emplace_back(m_, v);
    }
    row_list_.push_back(std::move(list));
    double lo = -kInf;
    double hi = kInf;
    if (row.sense != Sense::kGe) hi = row.rhs;
    if (row.sense != Sense::kLe) lo = row.rhs;
    lb_.push_back(lo);
    ub_.push_back(hi);
    cost_.push_back(0.0);
    state_.push_back(VarState::kBasic);
    x_.push_back(0.0);
    pos_.push_back(m_);
    head_.push_back(n_ + m_);
    weight_.push_back(1.0);
    ++m_;
  }
  if (!rows.empty()) inverse_ok_ = false;
}

void Simplex::set_bounds(int j, double lb, double ub) {
  lb_[static_cast<std::size_t>(j)] = lb;
  ub_[static_cast<std::size_t>(j)] = ub;
  if (state_[static_cast<std::size_t>(j)] != VarState::kBasic) place_nonbasic(j);
}

void Simplex::place_nonbasic(int j) {
  const auto u = static_cast<std::size_t>(j);
  if (state_[u] == VarState::kUpper && std::isfinite(ub_[u])) {
    x_[u] = ub_[u];
  } else if (state_[u] == VarState::kLower && std::isfinite(lb_[u])) {
    x_[u] = lb_[u];
  } else if (std::isfinite(lb_[u])) {
    state_[u] = VarState::kLower;
    x_[u] = lb_[u];
  } else {
    state_[u] = VarState::kUpper;
    x_[u] = ub_[u];
  }
}

Basis Simplex::basis() const { return Basis{state_}; }

void Simplex::set_basis(const Basis& b) {
  const int total_vars = total();
  int basic = 0;
  for (int j = 0; j < total_vars; ++j) {
    const auto u = static_cast<std::size_t>(j);
    state_[u] = u < b.state.size() ? b.state[u] : VarState::kBasic;
    if (state_[u] == VarState::kBasic) ++basic;
  }
  if (basic != m_) {
    set_slack_basis();
    return;
  }
  head_.clear();
  for (int j = 0; j < total_vars; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (state_[u] == VarState::kBasic) {
      pos_[u] = static_cast<int>(head_.size());
      head_.push_back(j);
    } else {
      pos_[u] = -1;
      place_nonbasic(j);
    }
  }
  weight_.assign(static_cast<std::size_t>(m_), 1.0);
  inverse_ok_ = false;
}

void Simplex::set_slack_basis() {
  head_.clear();
  for (int j = 0; j < n_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    state_[u] = cost_[u] < 0.0 ? VarState::kUpper : VarState::kLower;
    pos_[u] = -1;
    place_nonbasic(j);
  }
  for (int i = 0; i < m_; ++i) {
    const auto u = static_cast<std::size_t>(n_ + i);
    state_[u] = VarState::kBasic;
    pos_[u] = i;
    head_.push_back(n_ + i);
  }
  weight_.assign(static_cast<std::size_t>(m_), 1.0);
  inverse_ok_ = false;
}

void Simplex::invert() {
  for (int attempt = 0;; ++attempt) {
    if (attempt > 2 * m_ + 2) throw std::runtime_error("basis repair did not converge");
    std::vector<char> covered(static_cast<std::size_t>(m_), 0);
    kcols_.clear();
    for (int k = 0; k < m_; ++k) {
      const int j = head_[static_cast<std::size_t>(k)];
      if (j >= n_) {
        covered[static_cast<std::size_t>(j - n_)] = 1;
      } else {
        kcols_.push_back(k);
      }
    }
    krows_.clear();
    krow_of_row_.assign(static_cast<std::size_t>(m_), -1);
    for (int i = 0; i < m_; ++i) {
      if (!covered[static_cast<std::size_t>(i)]) {
        krow_of_row_[static_cast<std::size_t>(i)] = static_cast<int>(krows_.size());
        krows_.push_back(i);
      }
    }
    const int size = static_cast<int>(kcols_.size());
    if (static_cast<int>(krows_.size()) != size) throw std::logic_error("basis is not square");

    std::vector<Eigen::Triplet<double>> trips;
    for (int c = 0; c < size; ++c) {
      const int j = head_[static_cast<std::size_t>(kcols_[static_cast<std::size_t>(c)])];
      for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) {
        const int r = krow_of_row_[static_cast<std::size_t>(i)];
        if (r >= 0) trips.emplace_back(r, c, v);
      }
    }
    Eigen::SparseMatrix<double> kmat(size, size);
    kmat.setFromTriplets(trips.begin(), trips.end());
    kmat.makeCompressed();
    if (!lu_->factor(kmat)) {
      const Eigen::MatrixXd dense(kmat);
      std::vector<int> dep_cols;
      std::vector<int> free_rows;
      find_dependent(dense, dep_cols, free_rows);
      if (dep_cols.empty()) {
        lu_->factor_dense(dense);
      } else {
        // swap dependent structurals for logicals of uncovered rows
        for (std::size_t t = 0; t < dep_cols.size(); ++t) {
          const int k = kcols_[static_cast<std::size_t>(dep_cols[t])];
          const int j = head_[static_cast<std::size_t>(k)];
          const int logical = n_ + krows_[static_cast<std::size_t>(free_rows[t])];
          state_[static_cast<std::size_t>(j)] = VarState::kLower;
          pos_[static_cast<std::size_t>(j)] = -1;
          place_nonbasic(j);
          state_[static_cast<std::size_t>(logical)] = VarState::kBasic;
          pos_[static_cast<std::size_t>(logical)] = k;
          head_[static_cast<std::size_t>(k)] = logical;
          weight_[static_cast<std::size_t>(k)] = 1.0;
        }
        continue;
      }
    }
    head0_ = head_;
    pos0_.assign(static_cast<std::size_t>(n_), -1);
    for (int k = 0; k < m_; ++k) {
      const int j = head_[static_cast<std::size_t>(k)];
      if (j < n_) pos0_[static_cast<std::size_t>(j)] = k;
    }
    etas_.clear();
    ++generation_;
    inverse_ok_ = true;
    return;
  }
}

void Simplex::ftran_vec(std::vector<double>& v) const {
  const std::size_t size = kcols_.size();
  Eigen::VectorXd z(static_cast<Eigen::Index>(size));
  for (std::size_t r = 0; r < size; ++r) z[static_cast<Eigen::Index>(r)] = v[static_cast<std::size_t>(krows_[r])];
  lu_->solve(z);
  std::vector<double> out(static_cast<std::size_t>(m_), 0.0);
  for (std::size_t c = 0; c < size; ++c) out[static_cast<std::size_t>(kcols_[c])] = z[static_cast<Eigen::Index>(c)];
  for (int k = 0; k < m_; ++k) {
    const int j = head0_[static_cast<std::size_t>(k)];
    if (j < n_) continue;
    const int i = j - n_;
    double s = -v[static_cast<std::size_t>(i)];
    for (const auto& [jj, a] : row_list_[static_cast<std::size_t>(i)]) {
      const int p = pos0_[static_cast<std::size_t>(jj)];
      if (p >= 0) s += a * out[static_cast<std::size_t>(p)];
    }
    out[static_cast<std::size_t>(k)] = s;
  }
  for (const Eta& e : etas_) {
    const double vr = out[static_cast<std::size_t>(e.r)] / e.pivot;
    out[static_cast<std::size_t>(e.r)] = vr;
    if (vr == 0.0) continue;
    for (const auto& [i, a] : e.col) out[static_cast<std::size_t>(i)] -= a * vr;
  }
  v = std::move(out);
}

void Simplex::btran_vec(std::vector<double>& v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[static_cast<std::size_t>(it->r)];
    for (const auto& [i, a] : it->col) s -= a * v[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(it->r)] = s / it->pivot;
  }
  std::vector<double> y(static_cast<std::size_t>(m_), 0.0);
  for (int k = 0; k < m_; ++k) {
    const int j = head0_[static_cast<std::size_t>(k)];
    if (j >= n_) y[static_cast<std::size_t>(j - n_)] = -v[static_cast<std::size_t>(k)];
  }
  const std::size_t size = kcols_.size();
  Eigen::VectorXd z(static_cast<Eigen::Index>(size));
  for (std::size_t c = 0; c < size; ++c) {
    const int k = kcols_[c];
    double s = v[static_cast<std::size_t>(k)];
    for (const auto& [i, a] : cols_[static_cast<std::size_t>(head0_[static_cast<std::size_t>(k)])]) {
      if (krow_of_row_[static_cast<std::size_t>(i)] < 0) s -= a * y[static_cast<std::size_t>(i)];
    }
    z[static_cast<Eigen::Index>(c)] = s;
  }
  lu_->solve_transposed(z);
  for (std::size_t r = 0; r < size; ++r) y[static_cast<std::size_t>(krows_[r])] = z[static_cast<Eigen::Index>(r)];
  v = std::move(y);
}

void Simplex::ftran(int j, std::vector<double>& out) const {
  out.assign(static_cast<std::size_t>(m_), 0.0);
  if (j >= n_) {
    out[static_cast<std::size_t>(j - n_)] = -1.0;
  } else {
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) out[static_cast<std::size_t>(i)] = v;
  }
  ftran_vec(out);
}

void Simplex::compute_primal() {
  std::vector<double> rhs(static_cast<std::size_t>(m_), 0.0);
  for (int j = 0; j < n_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (state_[u] == VarState::kBasic || x_[u] == 0.0) continue;
    for (const auto& [i, v] : cols_[u]) rhs[static_cast<std::size_t>(i)] -= v * x_[u];
  }
  for (int i = 0; i < m_; ++i) {
    const auto u = static_cast<std::size_t>(n_ + i);
    if (state_[u] != VarState::kBasic) rhs[static_cast<std::size_t>(i)] += x_[u];
  }
  ftran_vec(rhs);
  for (int k = 0; k < m_; ++k) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])] = rhs[static_cast<std::size_t>(k)];
}

void Simplex::compute_duals(const std::vector<double>& cost) {
  y_.assign(static_cast<std::size_t>(m_), 0.0);
  for (int k = 0; k < m_; ++k) y_[static_cast<std::size_t>(k)] = cost[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])];
  btran_vec(y_);
  d_.assign(static_cast<std::size_t>(total()), 0.0);
  for (int j = 0; j < n_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (state_[u] == VarState::kBasic) continue;
    double s = cost[u];
    for (const auto& [i, v] : cols_[u]) s -= v * y_[static_cast<std::size_t>(i)];
    d_[u] = s;
  }
  for (int i = 0; i < m_; ++i) {
    const auto u = static_cast<std::size_t>(n_ + i);
    if (state_[u] != VarState::kBasic) d_[u] = cost[u] + y_[static_cast<std::size_t>(i)];
  }
}

bool Simplex::ensure_dual_feasible() {
  bool moved = false;
  for (int j = 0; j < total(); ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (state_[u] == VarState::kBasic || lb_[u] == ub_[u]) continue;
    if (state_[u] == VarState::kLower && d_[u] < -kDualTol) {
      if (!std::isfinite(ub_[u])) return false;
      state_[u] = VarState::kUpper;
      x_[u] = ub_[u];
      moved = true;
    } else if (state_[u] == VarState::kUpper && d_[u] > kDualTol) {
      if (!std::isfinite(lb_[u])) return false;
      state_[u] = VarState::kLower;
      x_[u] = lb_[u];
      moved = true;
    }
  }
  if (moved) compute_primal();
  return true;
}

void Simplex::pivot_row(const std::vector<double>& rho, std::vector<double>& out) const {
  out.assign(static_cast<std::size_t>(total()), 0.0);
  for (int i = 0; i < m_; ++i) {
    const double p = rho[static_cast<std::size_t>(i)];
    if (p == 0.0) continue;
    for (const auto& [j, v] : row_list_[static_cast<std::size_t>(i)]) out[static_cast<std::size_t>(j)] += p * v;
    out[static_cast<std::size_t>(n_ + i)] = -p;
  }
}

// Product-form update. With `tau` = B^-1 rho_r the steepest-edge weights stay exact;
// without it they are only kept from shrinking.
void Simplex::update(int r, int q, const std::vector<double>& alpha, const std::vector<double>* tau) {
  const double piv = alpha[static_cast<std::size_t>(r)];
  const double wr = weight_[static_cast<std::size_t>(r)];
  Eta eta{r, piv, {}};
  for (int k = 0; k < m_; ++k) {
    const double a = alpha[static_cast<std::size_t>(k)];
    if (k == r || std::abs(a) < 1e-13) continue;
    eta.col.emplace_back(k, a);
    const double ratio = a / piv;
    double& w = weight_[static_cast<std::size_t>(k)];
    if (tau) {
      w = std::max(w - 2.0 * ratio * (*tau)[static_cast<std::size_t>(k)] + ratio * ratio * wr, 1e-12);
    } else {
      w = std::max(w, ratio * ratio * wr);
    }
  }
  weight_[static_cast<std::size_t>(r)] = std::max(wr / (piv * piv), 1e-12);
  etas_.push_back(std::move(eta));
  const int leaving = head_[static_cast<std::size_t>(r)];
  pos_[static_cast<std::size_t>(leaving)] = -1;
  head_[static_cast<std::size_t>(r)] = q;
  pos_[static_cast<std::size_t>(q)] = r;
  state_[static_cast<std::size_t>(q)] = VarState::kBasic;
}

Simplex::Snapshot Simplex::save() const {
  return Snapshot{lb_, ub_, x_, weight_, state_, head_, pos_, generation_, etas_.size()};
}

void Simplex::restore(const Snapshot& s) {
  lb_ = s.lb;
  ub_ = s.ub;
  x_ = s.x;
  weight_ = s.weight;
  state_ = s.state;
  head_ = s.head;
  pos_ = s.pos;
  if (inverse_ok_ && generation_ == s.generation && etas_.size() >= s.etas) {
    etas_.resize(s.etas);
  } else {
    inverse_ok_ = false;
  }
}

double Simplex::infeasibility(int k) const {
  const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
  const double v = x_[j];
  if (v < lb_[j] - kPrimalTol) return lb_[j] - v;
  if (v > ub_[j] + kPrimalTol) return v - ub_[j];
  return 0.0;
}

double Simplex::max_primal_infeasibility() const {
  double worst = 0.0;
  for (int k = 0; k < m_; ++k) worst = std::max(worst, infeasibility(k));
  return worst;
}

double Simplex::max_dual_infeasibility() const {
  double worst = 0.0;
  for (int j = 0; j < total(); ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (state_[u] == VarState::kBasic || lb_[u] == ub_[u]) continue;
    if (state_[u] == VarState::kLower) worst = std::max(worst, -d_[u]);
    if (state_[u] == VarState::kUpper) worst = std::max(worst, d_[u]);
  }
  return worst;
}

// Checks the current point against the original data: row equations, bounds, and
// reduced costs (zero on basics, correct sign on nonbasics).
bool Simplex::verified() const {
  if (max_primal_infeasibility() > kVerifyTol || max_dual_infeasibility() > kVerifyTol) return false;
  for (int i = 0; i < m_; ++i) {
    double act = 0.0;
    double scale = 1.0;
    for (const auto& [j, v] : row_list_[static_cast<std::size_t>(i)]) {
      const double t = v * x_[static_cast<std::size_t>(j)];
      act += t;
      scale = std::max(scale, std::abs(t));
    }
    if (std::abs(act - x_[static_cast<std::size_t>(n_ + i)]) > kVerifyTol * scale) return false;
  }
  for (int k = 0; k < m_; ++k) {
    const int j = head_[static_cast<std::size_t>(k)];
    double d = cost_[static_cast<std::size_t>(j)];
    if (j < n_) {
      for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) d -= v * y_[static_cast<std::size_t>(i)];
    } else {
      d += y_[static_cast<std::size_t>(j - n_)];
    }
    if (std::abs(d) > kVerifyTol) return false;
  }
  return true;
}

Simplex::Outcome Simplex::primal_loop(Clock::time_point deadline) {
  const int total_vars = total();
  const long max_iter = iterations_ + 50L * total_vars + 10000;
  std::vector<double> alpha;
  std::vector<double> phase_cost(static_cast<std::size_t>(total_vars), 0.0);
  int degenerate = 0;
  for (long local = 0;; ++local) {
    if (etas_.size() >= kRefactor) {
      invert();
      compute_primal();
    }
    if (local % 32 == 31 && Clock::now() > deadline) return Outcome::kTimeLimit;
    if (iterations_ > max_iter) return Outcome::kFailure;

    bool phase1 = false;
    std::fill(phase_cost.begin(), phase_cost.end(), 0.0);
    for (int k = 0; k < m_; ++k) {
      const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
      if (x_[j] < lb_[j] - kPrimalTol) {
        phase_cost[j] = -1.0;
        phase1 = true;
      } else if (x_[j] > ub_[j] + kPrimalTol) {
        phase_cost[j] = 1.0;
        phase1 = true;
      }
    }
    compute_duals(phase1 ? phase_cost : cost_);

    const bool bland = degenerate > kBlandAfter;
    int q = -1;
    double best = 0.0;
    for (int j = 0; j < total_vars; ++j) {
      const auto u = static_cast<std::size_t>(j);
      if (state_[u] == VarState::kBasic || lb_[u] == ub_[u]) continue;
      double score = 0.0;
      if (state_[u] == VarState::kLower && d_[u] < -kDualTol) score = -d_[u];
      if (state_[u] == VarState::kUpper && d_[u] > kDualTol) score = d_[u];
      if (score <= 0.0) continue;
      if (bland) {
        q = j;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
      }
    }
    if (q < 0) {
      if (!phase1) return Outcome::kOptimal;
      if (!etas_.empty()) {
        invert();
        compute_primal();
        continue;
      }
      return Outcome::kInfeasible;
    }

    const auto uq = static_cast<std::size_t>(q);
    const double dir = state_[uq] == VarState::kLower ? 1.0 : -1.0;
    ftran(q, alpha);

    // rate of change of each basic variable per unit step of the entering one
    const double flip = ub_[uq] - lb_[uq];
    int leave = -1;
    double theta = kInf;
    bool to_upper = false;
    if (phase1 || bland) {
      double best_alpha = 0.0;
      for (int k = 0; k < m_; ++k) {
        const double a = alpha[static_cast<std::size_t>(k)];
        if (std::abs(a) < kPivotTol) continue;
        const double rate = -a * dir;
        const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
        const double v = x_[j];
        double lim = kInf;
        bool up = false;
        if (v < lb_[j] - kPrimalTol) {
          if (rate > 0) lim = (lb_[j] - v) / rate;
        } else if (v > ub_[j] + kPrimalTol) {
          if (rate < 0) {
            lim = (v - ub_[j]) / -rate;
            up = true;
          }
        } else if (rate < 0 && std::isfinite(lb_[j])) {
          lim = std::max(0.0, v - lb_[j]) / -rate;
        } else if (rate > 0 && std::isfinite(ub_[j])) {
          lim = std::max(0.0, ub_[j] - v) / rate;
          up = true;
        }
        if (lim == kInf) continue;
        const bool better = lim < theta - 1e-12 ||
                            (lim <= theta + 1e-12 &&
                             (bland ? head_[static_cast<std::size_t>(k)] < head_[static_cast<std::size_t>(leave)]
                                    : std::abs(a) > best_alpha));
        if (leave < 0 || better) {
          theta = lim;
          leave = k;
          to_upper = up;
          best_alpha = std::abs(a);
        }
      }
    } else {
      double tmax = kInf;
      for (int k = 0; k < m_; ++k) {
        const double a = alpha[static_cast<std::size_t>(k)];
        if (std::abs(a) < kPivotTol) continue;
        const double rate = -a * dir;
        const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
        if (rate < 0 && std::isfinite(lb_[j])) tmax = std::min(tmax, (x_[j] - lb_[j] + kPrimalTol) / -rate);
        if (rate > 0 && std::isfinite(ub_[j])) tmax = std::min(tmax, (ub_[j] - x_[j] + kPrimalTol) / rate);
      }
      double best_alpha = 0.0;
      for (int k = 0; k < m_; ++k) {
        const double a = alpha[static_cast<std::size_t>(k)];
        if (std::abs(a) < kPivotTol) continue;
        const double rate = -a * dir;
        const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(k)]);
        double lim = kInf;
        bool up = false;
        if (rate < 0 && std::isfinite(lb_[j])) lim = (x_[j] - lb_[j]) / -rate;
        if (rate > 0 && std::isfinite(ub_[j])) {
          lim = (ub_[j] - x_[j]) / rate;
          up = true;
        }
        if (lim <= tmax && std::abs(a) > best_alpha) {
          best_alpha = std::abs(a);
          leave = k;
          theta = std::max(0.0, lim);
          to_upper = up;
        }
      }
    }
    if (flip <= theta) {
      leave = -1;
      theta = flip;
    }
    if (!std::isfinite(theta)) return Outcome::kUnbounded;

    const double step = dir * theta;
    if (step != 0.0) {
      x_[uq] += step;
      for (int k = 0; k < m_; ++k) {
        const double a = alpha[static_cast<std::size_t>(k)];
        if (a != 0.0) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])] -= a * step;
      }
    }
    if (leave < 0) {
      state_[uq] = dir > 0 ? VarState::kUpper : VarState::kLower;
      x_[uq] = dir > 0 ? ub_[uq] : lb_[uq];
    } else {
      const int lv = head_[static_cast<std::size_t>(leave)];
      const auto ul = static_cast<std::size_t>(lv);
      state_[ul] = to_upper ? VarState::kUpper : VarState::kLower;
      x_[ul] = to_upper ? ub_[ul] : lb_[ul];
      update(leave, q, alpha, nullptr);
    }
    degenerate = theta < 1e-12 ? degenerate + 1 : 0;
    ++iterations_;
  }
}

Simplex::Outcome Simplex::dual_loop(double cutoff, Clock::time_point deadline) {
  const int total_vars = total();
  const long max_iter = iterations_ + 50L * total_vars + 10000;
  std::vector<double> row;
  std::vector<double> alpha;
  std::vector<double> rho;
  std::vector<double> tau;
  int degenerate = 0;
  for (long local = 0;; ++local) {
    if (etas_.size() >= kRefactor) {
      invert();
      compute_primal();
      compute_duals(cost_);
      if (!ensure_dual_feasible()) return Outcome::kLostFeasibility;
    }
    if (local % 32 == 31 && Clock::now() > deadline) return Outcome::kTimeLimit;
    if (iterations_ > max_iter) return Outcome::kFailure;
    if (std::isfinite(cutoff) && objective() > cutoff) return Outcome::kCutoff;
    if (iteration_cap_ > 0 && iterations_ >= cap_at_) return Outcome::kIterationLimit;

    const bool bland = degenerate > kBlandAfter;
    int r = -1;
    double best = 0.0;
    for (int k = 0; k < m_; ++k) {
      const double inf = infeasibility(k);
      if (inf <= 0.0) continue;
      if (bland) {
        if (r < 0 || head_[static_cast<std::size_t>(k)] < head_[static_cast<std::size_t>(r)]) r = k;
        continue;
      }
      const double score = inf * inf / std::max(weight_[static_cast<std::size_t>(k)], 1e-12);
      if (score > best) {
        best = score;
        r = k;
      }
    }
    if (r < 0) return Outcome::kOptimal;  // verified by the caller

    const int lv = head_[static_cast<std::size_t>(r)];
    const auto ul = static_cast<std::size_t>(lv);
    const bool to_upper = x_[ul] > ub_[ul];
    const double target = to_upper ? ub_[ul] : lb_[ul];
    const double sigma = to_upper ? 1.0 : -1.0;
    rho.assign(static_cast<std::size_t>(m_), 0.0);
    rho[static_cast<std::size_t>(r)] = 1.0;
    btran_vec(rho);
    pivot_row(rho, row);

    int q = -1;
    if (bland) {
      double tmin = kInf;
      for (int j = 0; j < total_vars; ++j) {
        const auto u = static_cast<std::size_t>(j);
        if (state_[u] == VarState::kBasic || lb_[u] == ub_[u]) continue;
        const double a = sigma * row[u];
        double lim = kInf;
        if (state_[u] == VarState::kLower && a > kPivotTol) lim = std::max(0.0, d_[u]) / a;
        if (state_[u] == VarState::kUpper && a < -kPivotTol) lim = std::min(0.0, d_[u]) / a;
        if (lim < tmin - 1e-12) {
          tmin = lim;
          q = j;
        }
      }
    } else {
      double tmax = kInf;
      for (int j = 0; j < total_vars; ++j) {
        const auto u = static_cast<std::size_t>(j);
        if (state_[u] == VarState::kBasic || lb_[u] == ub_[u]) continue;
        const double a = sigma * row[u];
        if (state_[u] == VarState::kLower && a > kPivotTol) tmax = std::min(tmax, (d_[u] + kDualTol) / a);
        if (state_[u] == VarState::kUpper && a < -kPivotTol) tmax = std::min(tmax, (d_[u] - kDualTol) / a);
      }
      double best_a = 0.0;
      for (int j = 0; j < total_vars; ++j) {
        const auto u = static_cast<std::size_t>(j);
        if (state_[u] == VarState::kBasic || lb_[u] == ub_[u]) continue;
        const double a = sigma * row[u];
        bool cand = (state_[u] == VarState::kLower && a > kPivotTol) ||
                    (state_[u] == VarState::kUpper && a < -kPivotTol);
        if (!cand) continue;
        if (d_[u] / a <= tmax && std::abs(a) > best_a) {
          best_a = std::abs(a);
          q = j;
        }
      }
    }
    if (q < 0) {
      if (!etas_.empty()) {
        invert();
        compute_primal();
        compute_duals(cost_);
        if (!ensure_dual_feasible()) return Outcome::kLostFeasibility;
        continue;
      }
      return Outcome::kInfeasible;
    }

    const auto uq = static_cast<std::size_t>(q);
    ftran(q, alpha);
    const double arq = alpha[static_cast<std::size_t>(r)];
    if (std::abs(arq - row[uq]) > 1e-7 * (1.0 + std::abs(arq)) || std::abs(arq) < kPivotTol) {
      if (!etas_.empty()) {
        invert();
        compute_primal();
        compute_duals(cost_);
        if (!ensure_dual_feasible()) return Outcome::kLostFeasibility;
        continue;
      }
      if (std::abs(arq) < kPivotTol) return Outcome::kFailure;
    }

    const double t = -d_[uq] / row[uq];
    if (t != 0.0) {
      for (int j = 0; j < total_vars; ++j) {
        const auto u = static_cast<std::size_t>(j);
        if (state_[u] != VarState::kBasic && row[u] != 0.0) d_[u] += t * row[u];
      }
    }
    d_[uq] = 0.0;
    d_[ul] = t;

    const double theta = (x_[ul] - target) / arq;
    x_[uq] += theta;
    for (int k = 0; k < m_; ++k) {
      const double a = alpha[static_cast<std::size_t>(k)];
      if (a != 0.0) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])] -= theta * a;
    }
    x_[ul] = target;
    state_[ul] = to_upper ? VarState::kUpper : VarState::kLower;
    tau = rho;
    ftran_vec(tau);
    weight_[static_cast<std::size_t>(r)] = 0.0;
    for (double v : rho) weight_[static_cast<std::size_t>(r)] += v * v;
    update(r, q, alpha, &tau);
    degenerate = std::abs(t) < 1e-12 ? degenerate + 1 : 0;
    ++iterations_;
  }
}

LpStatus Simplex::solve(LpAlgorithm algo, double cutoff, Clock::time_point deadline) {
  cap_at_ = iterations_ + iteration_cap_;
  try {
    if (!inverse_ok_) invert();
    compute_primal();
    for (int round = 0; round < 6; ++round) {
      Outcome o = Outcome::kLostFeasibility;
      if (algo == LpAlgorithm::kDual) {
        compute_duals(cost_);
        if (ensure_dual_feasible()) o = dual_loop(cutoff, deadline);
      }
      if (o == Outcome::kLostFeasibility) o = primal_loop(deadline);
      switch (o) {
        case Outcome::kTimeLimit:
          return LpStatus::kTimeLimit;
        case Outcome::kCutoff:
          return LpStatus::kCutoff;
        case Outcome::kIterationLimit:
          return LpStatus::kIterationLimit;
        case Outcome::kUnbounded:
          return LpStatus::kUnbounded;
        case Outcome::kFailure:
        case Outcome::kLostFeasibility:
          return LpStatus::kNumericFailure;
        case Outcome::kInfeasible:
          compute_duals(cost_);
          return LpStatus::kInfeasible;
        case Outcome::kOptimal:
          break;
      }
      compute_primal();
      compute_duals(cost_);
      if (!verified() && !etas_.empty()) {
        invert();
        compute_primal();
        compute_duals(cost_);
      }
      if (verified()) return LpStatus::kOptimal;
      algo = LpAlgorithm::kPrimal;
    }
    return LpStatus::kNumericFailure;
  } catch (const std::runtime_error&) {
    return LpStatus::kNumericFailure;
  }
}

double Simplex::objective() const {
  double z = 0.0;
  for (int j = 0; j < n_; ++j) z += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
  return z;
}

std::vector<double> Simplex::primal() const {
  return {x_.begin(), x_.begin() + n_};
}

std::vector<double> Simplex::duals() const { return y_; }

std::vector<double> Simplex::reduced_costs() const {
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (int j = 0; j < n_; ++j) {
    if (state_[static_cast<std::size_t>(j)] != VarState::kBasic) out[static_cast<std::size_t>(j)] = d_[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace dats::milp::detail
