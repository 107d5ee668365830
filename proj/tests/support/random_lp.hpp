#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "dats/milp/lp.hpp"
#include "dats/milp/model.hpp"

namespace dats::testing {

// Random LP with integer data that is feasible at a hidden interior point.
inline milp::ModelIR random_feasible_lp(std::mt19937_64& rng, int max_vars, int max_rows) {
  std::uniform_int_distribution<int> nv(1, max_vars), nr(1, max_rows), coef(-5, 5), cost(-9, 9),
      sense(0, 2), slack(0, 4), width(0, 8);
  milp::ModelIR m;
  const int n = nv(rng);
  const int rows = nr(rng);
  std::vector<double> point;
  for (int j = 0; j < n; ++j) {
    const int lo = coef(rng);
    const int hi = lo + width(rng);
    m.add_variable("x" + std::to_string(j), lo, hi, cost(rng), false);
    point.push_back(lo + (hi - lo) * std::uniform_real_distribution<double>(0, 1)(rng));
  }
  for (int i = 0; i < rows; ++i) {
    milp::Row r;
    r.name = "r" + std::to_string(i);
    for (int j = 0; j < n; ++j) {
      const int c = coef(rng);
      if (c != 0) r.terms.push_back({j, static_cast<double>(c)});
    }
    const double act = milp::row_activity(r, point);
    switch (sense(rng)) {
      case 0:
        r.sense = milp::Sense::kLe;
        r.rhs = std::ceil(act) + slack(rng);
        break;
      case 1:
        r.sense = milp::Sense::kGe;
        r.rhs = std::floor(act) - slack(rng);
        break;
      default:
        r.sense = milp::Sense::kEq;
        r.rhs = act;
        break;
    }
    m.add_row(std::move(r));
  }
  return m;
}

// Lagrangian dual value of row multipliers y; a lower bound on the LP optimum when signs are valid.
inline double dual_bound(const milp::ModelIR& m, const std::vector<double>& y) {
  std::vector<double> d(m.vars.size());
  for (std::size_t j = 0; j < m.vars.size(); ++j) d[j] = m.vars[j].obj;
  double z = m.obj_offset;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    z += y[i] * m.rows[i].rhs;
    for (const auto& t : m.rows[i].terms) d[static_cast<std::size_t>(t.var)] -= y[i] * t.coef;
  }
  for (std::size_t j = 0; j < m.vars.size(); ++j) z += d[j] > 0 ? d[j] * m.vars[j].lb : d[j] * m.vars[j].ub;
  return z;
}

// Largest |dual * slack| over rows and |reduced cost * distance to bound| over columns.
inline double complementarity_violation(const milp::ModelIR& m, const milp::LpSolution& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    const double slack = milp::row_activity(m.rows[i], s.x) - m.rows[i].rhs;
    worst = std::max(worst, std::abs(s.duals[i] * slack));
  }
  for (std::size_t j = 0; j < m.vars.size(); ++j) {
    const double d = s.reduced_costs[j];
    if (d > 0) worst = std::max(worst, d * (s.x[j] - m.vars[j].lb));
    if (d < 0) worst = std::max(worst, -d * (m.vars[j].ub - s.x[j]));
  }
  return worst;
}

}  // namespace dats::testing
