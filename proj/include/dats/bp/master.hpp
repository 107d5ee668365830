#pragma once

#include <map>
#include <vector>

#include "dats/bp/column.hpp"
#include "dats/milp/lp.hpp"
#include "dats/milp/model.hpp"

namespace dats::bp {

/// Branching decision on an original arc variable (id in the compact model).
struct ArcFix {
  int var;
  bool one;
};

/// Restricted master: lambda per column, a binary x per arc used by some column (or
/// fixed by branching), per-truck in/out degree rows, convexity, and coupling rows
/// x - sum_k xhat_k lambda_k = 0.
struct Rmp {
  milp::ModelIR model;
  std::vector<int> lambda;                // var per column
  std::map<int, int> x_of_arc;            // compact arc var -> rmp var
  std::map<int, int> coupling_row;        // compact arc var -> row
  std::vector<int> in_row;                // per truck, -1 when absent
  std::vector<int> out_row;
  int convexity_row = -1;
  std::vector<int> artificial;            // cost-M slacks of arcs fixed to one
  double big_m = 0.0;
};

/// Duals in the minimisation convention: u1, u2 <= 0 on the degree rows; alpha and v
/// free. v holds one entry per compact arc (position in VarIndex::arcs()); arcs
/// without a coupling row get the largest value that keeps their x dual feasible,
/// -u1(to) - u2(from).
struct Duals {
  std::vector<double> u1;
  std::vector<double> u2;
  double alpha = 0.0;
  std::vector<double> v;
};

struct RmpLp {
  milp::LpSolution lp;
  Duals duals;
  double objective = 0.0;
  bool artificial_used = false;
};

/// Throws std::invalid_argument without columns.
Rmp build_rmp(const compact::BuildResult& built, const std::vector<PseudoSchedule>& columns,
              const std::vector<ArcFix>& fixes = {});

/// Throws std::logic_error when the LP is not optimal or a dual has the wrong sign.
RmpLp solve_rmp_lp(const compact::BuildResult& built, const Rmp& rmp);

/// cost - alpha + sum_a v_a xhat_a.
double reduced_cost(const compact::BuildResult& built, const Duals& duals, const PseudoSchedule& col);

}  // namespace dats::bp
