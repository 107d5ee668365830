#include "dats/milp/lp.hpp"

#include <limits>

#include "simplex.hpp"

namespace dats::milp {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kNumericFailure:
      return "numeric-failure";
    case LpStatus::kCutoff:
      return "cutoff";
    case LpStatus::kTimeLimit:
      return "time-limit";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "?";
}

LpSolution solve_lp(const ModelIR& model, const LpOptions& opts) {
  check_model(model);
  detail::Simplex simplex(model);
  const auto deadline = opts.time_limit > 0
                            ? detail::Clock::now() + std::chrono::duration_cast<detail::Clock::duration>(
                                                         std::chrono::duration<double>(opts.time_limit))
                            : detail::Clock::time_point::max();
  LpSolution out;
  out.status = simplex.solve(opts.algorithm, std::numeric_limits<double>::infinity(), deadline);
  out.iterations = simplex.iterations();
  if (out.status == LpStatus::kOptimal) {
    out.x = simplex.primal();
    out.duals = simplex.duals();
    out.reduced_costs = simplex.reduced_costs();
    out.objective = simplex.objective() + model.obj_offset;
  }
  return out;
}

}  // namespace dats::milp
