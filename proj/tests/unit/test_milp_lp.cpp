#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dats/milp/lp.hpp"
#include "random_lp.hpp"

using namespace dats::milp;

namespace {

ModelIR single_bound_model() {
  ModelIR m;
  m.add_variable("x", 0, 10, 1, false);
  m.add_row({{{0, 1.0}}, Sense::kGe, 3, "lower"});
  return m;
}

}  // namespace

TEST(SolveLp, LowerBoundRowHasUnitDual) {
  const auto s = solve_lp(single_bound_model());
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 3.0, 1e-9);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-9);
}

TEST(SolveLp, ContradictoryRowsAreInfeasible) {
  ModelIR m;
  m.add_variable("x", -10, 10, 0, false);
  m.add_row({{{0, 1.0}}, Sense::kLe, 1, "a"});
  m.add_row({{{0, 1.0}}, Sense::kGe, 2, "b"});
  EXPECT_EQ(solve_lp(m).status, LpStatus::kInfeasible);
  EXPECT_EQ(solve_lp(m, {LpAlgorithm::kDual, 0}).status, LpStatus::kInfeasible);
}

TEST(SolveLp, ObjectiveOffsetIsReported) {
  auto m = single_bound_model();
  m.obj_offset = -2.5;
  EXPECT_NEAR(solve_lp(m).objective, 0.5, 1e-9);
}

TEST(SolveLp, LessEqualDualIsNonPositive) {
  ModelIR m;
  m.add_variable("x", 0, 4, -1, false);
  m.add_variable("y", 0, 4, -1, false);
  m.add_row({{{0, 1.0}, {1, 1.0}}, Sense::kLe, 5, "cap"});
  const auto s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -5.0, 1e-9);
  EXPECT_NEAR(s.duals[0], -1.0, 1e-9);
}

TEST(SolveLp, EmptyModel) {
  ModelIR m;
  const auto s = solve_lp(m);
  EXPECT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.objective, 0.0);
}

TEST(SolveLp, RejectsInfiniteBounds) {
  ModelIR m;
  m.add_variable("x", 0, INFINITY, 1, false);
  EXPECT_THROW(solve_lp(m), std::invalid_argument);
}

TEST(SolveLp, RejectsDanglingReference) {
  ModelIR m;
  m.add_variable("x", 0, 1, 1, false);
  m.add_row({{{3, 1.0}}, Sense::kLe, 1, "bad"});
  EXPECT_THROW(solve_lp(m), std::invalid_argument);
}

TEST(SolveLp, DegenerateRowsConverge) {
  // many rows tight at the optimum vertex
  ModelIR m;
  for (int j = 0; j < 3; ++j) m.add_variable("x" + std::to_string(j), 0, 5, -1, false);
  for (int i = 0; i < 12; ++i) {
    Row r{{}, Sense::kLe, 3, "r" + std::to_string(i)};
    for (int j = 0; j < 3; ++j) r.terms.push_back({j, (i + j) % 3 == 0 ? 2.0 : 1.0});
    r.rhs = 4;
    m.add_row(r);
  }
  const auto p = solve_lp(m);
  const auto d = solve_lp(m, {LpAlgorithm::kDual, 0});
  ASSERT_EQ(p.status, LpStatus::kOptimal);
  ASSERT_EQ(d.status, LpStatus::kOptimal);
  EXPECT_NEAR(p.objective, d.objective, 1e-9);
}

class RandomLp : public ::testing::TestWithParam<LpAlgorithm> {};

TEST_P(RandomLp, StrongDualityAndComplementarySlackness) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = dats::testing::random_feasible_lp(rng, 20, 20);
    const auto s = solve_lp(m, {GetParam(), 0});
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_LE(m.max_violation(s.x), 1e-7) << "trial " << trial;
    EXPECT_NEAR(s.objective, m.objective(s.x), 1e-7);
    EXPECT_NEAR(s.objective, dats::testing::dual_bound(m, s.duals), 1e-7) << "trial " << trial;
    EXPECT_LE(dats::testing::complementarity_violation(m, s), 1e-7) << "trial " << trial;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      if (m.rows[i].sense == Sense::kLe) {
        EXPECT_LE(s.duals[i], 1e-9);
      }
      if (m.rows[i].sense == Sense::kGe) {
        EXPECT_GE(s.duals[i], -1e-9);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Algorithms, RandomLp, ::testing::Values(LpAlgorithm::kPrimal, LpAlgorithm::kDual));
