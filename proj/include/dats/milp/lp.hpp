#pragma once

#include <vector>

#include "dats/milp/model.hpp"

namespace dats::milp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericFailure, kCutoff, kTimeLimit, kIterationLimit };
const char* lp_status_name(LpStatus s);

enum class LpAlgorithm { kPrimal, kDual };

struct LpOptions {
  LpAlgorithm algorithm = LpAlgorithm::kPrimal;
  double time_limit = 0.0;  // seconds, 0 = none
};

/// Row duals follow the minimisation convention: y <= 0 on binding <= rows,
/// y >= 0 on binding >= rows, so that reduced cost d = c - A^T y.
struct LpSolution {
  LpStatus status = LpStatus::kNumericFailure;
  std::vector<double> x;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  long iterations = 0;
};

/// Bounded-variable simplex on the continuous relaxation (integrality ignored).
LpSolution solve_lp(const ModelIR& model, const LpOptions& opts = {});

}  // namespace dats::milp
