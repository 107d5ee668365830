#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <vector>

#include "dats/milp/lp.hpp"
#include "dats/milp/model.hpp"

namespace dats::milp::detail {

using Clock = std::chrono::steady_clock;

enum class VarState : std::uint8_t { kBasic, kLower, kUpper };

/// Status of every structural and logical variable. Logicals of rows added after the
/// basis was taken are treated as basic when it is restored.
struct Basis {
  std::vector<VarState> state;
};

class KernelLu;

/// Bounded simplex over A x - r = 0 with row activities r as logical variables.
/// The basis is factorised as a sparse LU of its structural kernel followed by a file
/// of product-form updates.
class Simplex {
 public:
  explicit Simplex(const ModelIR& model);
  ~Simplex();
  Simplex(const Simplex&) = delete;
  Simplex& operator=(const Simplex&) = delete;

  int num_structural() const { return n_; }
  int num_rows() const { return m_; }

  void add_rows(const std::vector<Row>& rows);
  void set_bounds(int j, double lb, double ub);
  double lower(int j) const { return lb_[static_cast<std::size_t>(j)]; }
  double upper(int j) const { return ub_[static_cast<std::size_t>(j)]; }

  Basis basis() const;
  void set_basis(const Basis& b);
  void set_slack_basis();

  /// Basis state for probing bound changes and rolling back. The factorisation is
  /// reused when it has not been refreshed in between.
  struct Snapshot {
    std::vector<double> lb, ub, x, weight;
    std::vector<VarState> state;
    std::vector<int> head, pos;
    long generation;
    std::size_t etas;
  };
  Snapshot save() const;
  void restore(const Snapshot& s);

  /// Iterations allowed per solve call, 0 = unlimited. When the dual simplex stops on
  /// the cap its objective is still a valid lower bound.
  void set_iteration_cap(long cap) { iteration_cap_ = cap; }

  /// `cutoff` stops the dual simplex once its objective exceeds the value.
  LpStatus solve(LpAlgorithm algo, double cutoff, Clock::time_point deadline);

  double objective() const;
  std::vector<double> primal() const;
  std::vector<double> duals() const;
  std::vector<double> reduced_costs() const;
  long iterations() const { return iterations_; }

 private:
  enum class Outcome { kOptimal, kInfeasible, kUnbounded, kCutoff, kTimeLimit, kIterationLimit, kLostFeasibility, kFailure };

  struct Eta {
    int r;
    double pivot;
    std::vector<std::pair<int, double>> col;  // off-pivot entries
  };

  int total() const { return n_ + m_; }

  void invert();
  // Row space -> basis positions, in place.
  void ftran_vec(std::vector<double>& v) const;
  // Basis positions -> row space, in place.
  void btran_vec(std::vector<double>& v) const;
  void ftran(int j, std::vector<double>& out) const;
  void compute_primal();
  void compute_duals(const std::vector<double>& cost);
  bool ensure_dual_feasible();
  void place_nonbasic(int j);
  void pivot_row(const std::vector<double>& rho, std::vector<double>& out) const;
  void update(int r, int q, const std::vector<double>& alpha, const std::vector<double>* tau);
  double infeasibility(int k) const;
  double max_primal_infeasibility() const;
  double max_dual_infeasibility() const;
  bool verified() const;

  Outcome primal_loop(Clock::time_point deadline);
  Outcome dual_loop(double cutoff, Clock::time_point deadline);

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<std::pair<int, double>>> cols_;      // structural columns
  std::vector<std::vector<std::pair<int, double>>> row_list_;  // row-wise copy
  std::vector<double> lb_, ub_, cost_;
  std::vector<VarState> state_;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<double> x_;
  std::vector<double> weight_;  // dual steepest-edge weights
  std::vector<double> y_;
  std::vector<double> d_;

  // factorisation of the basis at the last inversion
  std::unique_ptr<KernelLu> lu_;
  std::vector<int> head0_;       // basis at inversion
  std::vector<int> pos0_;        // position of a structural in head0_, or -1
  std::vector<int> krows_;       // kernel row -> model row
  std::vector<int> krow_of_row_;  // model row -> kernel row, or -1
  std::vector<int> kcols_;       // kernel column -> position
  std::vector<Eta> etas_;
  long generation_ = 0;
  bool inverse_ok_ = false;
  long iterations_ = 0;
  long iteration_cap_ = 0;
  long cap_at_ = 0;
};

}  // namespace dats::milp::detail
