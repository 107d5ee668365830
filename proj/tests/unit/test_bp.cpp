#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dats/bp/branch_and_price.hpp"
#include "dats/bp/column.hpp"
#include "dats/bp/master.hpp"
#include "dats/bp/pricing.hpp"
#include "dats/compact/solve.hpp"
#include "dats/core/evaluate.hpp"
#include "dats/instgen/generator.hpp"
#include "dats/oracle/brute_force.hpp"
#include "fixtures.hpp"

using namespace dats;
using namespace dats::bp;
using dats::testing::toy;

namespace {

compact::BuildResult built(const core::Instance& inst, core::Variant v = core::Variant::kSdPT, bool fixing = true) {
  compact::BuildOptions o;
  o.fixing = fixing;
  return compact::build(inst, v, o);
}

Duals zero_duals(const compact::BuildResult& b) {
  Duals d;
  d.u1.assign(b.instance.trucks.size(), 0.0);
  d.u2.assign(b.instance.trucks.size(), 0.0);
  d.v.assign(b.index.arcs().size(), 0.0);
  return d;
}

core::Instance small(std::uint64_t seed, core::Variant v = core::Variant::kSdPT) {
  instgen::GenParams p = instgen::GenParams::for_horizon(12);
  p.docks = 2;
  p.trucks = 5;
  p.scenario_count = {1, 3};
  p.seed = seed;
  p.variant = v;
  return instgen::generate(p);
}

int arc_var(const compact::BuildResult& b, int from, int to) {
  for (const compact::Arc& a : b.index.arcs()) {
    if (a.from == from && a.to == to) return a.var;
  }
  return -1;
}

}  // namespace

TEST(Column, InitialColumns) {
  const auto b1 = built(toy("toy1"));
  EXPECT_EQ(initial_column(b1).cost, 0);

  core::Instance none = toy("toy2");
  none.capacity = {0, 0, 0};
  const auto b0 = built(none);
  core::Cost g = 0;
  for (const core::Truck& t : none.trucks) g += t.miss_penalty;
  EXPECT_EQ(initial_column(b0).cost, g);

  const auto b2 = built(toy("toy2"));
  const PseudoSchedule c = initial_column(b2);
  EXPECT_GE(c.cost, dats::testing::kToy2Optimum);
  EXPECT_TRUE(core::check_feasibility(b2.instance, c.schedule).empty());
  EXPECT_EQ(empty_column(b2).cost, g);
  EXPECT_TRUE(empty_column(b2).arcs.empty());
}

TEST(Column, FingerprintAndDedup) {
  const auto b = built(toy("toy2"));
  PseudoSchedule c = initial_column(b);
  std::vector<ArcKey> shuffled = c.arcs;
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_EQ(fingerprint(shuffled), c.fingerprint);

  ColumnPool pool;
  EXPECT_TRUE(pool.add(c));
  EXPECT_FALSE(pool.add(c));
  EXPECT_EQ(pool.size(), 1u);
  EXPECT_TRUE(pool.add(empty_column(b)));
  EXPECT_EQ(pool.size(), 2u);
}

TEST(Master, SingleColumn) {
  const auto b = built(toy("toy2"));
  const PseudoSchedule c = initial_column(b);
  const Rmp rmp = build_rmp(b, {c});
  const RmpLp lp = solve_rmp_lp(b, rmp);
  EXPECT_NEAR(lp.objective, static_cast<double>(c.cost), 1e-9);
  EXPECT_NEAR(lp.lp.x[static_cast<std::size_t>(rmp.lambda[0])], 1.0, 1e-9);
  EXPECT_NEAR(reduced_cost(b, lp.duals, c), 0.0, 1e-7);
  for (std::size_t j = 0; j < lp.duals.u1.size(); ++j) {
    EXPECT_LE(lp.duals.u1[j], 0.0);
    EXPECT_LE(lp.duals.u2[j], 0.0);
  }
  EXPECT_THROW(build_rmp(b, {}), std::invalid_argument);
}

TEST(Master, EmptyColumnOnly) {
  const auto b = built(toy("toy2"));
  const PseudoSchedule e = empty_column(b);
  const RmpLp lp = solve_rmp_lp(b, build_rmp(b, {e}));
  for (double u : lp.duals.u1) EXPECT_EQ(u, 0.0);
  for (double u : lp.duals.u2) EXPECT_EQ(u, 0.0);
  EXPECT_NEAR(lp.duals.alpha, static_cast<double>(e.cost), 1e-9);
}

TEST(Master, DualsPriceExistingColumnsNonNegative) {
  const auto b = built(toy("toy2"));
  const auto ref = oracle::brute_force(b.instance);
  const std::vector<PseudoSchedule> cols{initial_column(b), empty_column(b), *make_column(b, ref.schedule)};
  const Rmp rmp = build_rmp(b, cols);
  const RmpLp lp = solve_rmp_lp(b, rmp);
  EXPECT_NEAR(lp.objective, static_cast<double>(dats::testing::kToy2Optimum), 1e-7);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const double rc = reduced_cost(b, lp.duals, cols[k]);
    EXPECT_GE(rc, -1e-6);
    // complementary slackness on the columns
    EXPECT_NEAR(rc * lp.lp.x[static_cast<std::size_t>(rmp.lambda[k])], 0.0, 1e-7);
  }
  for (std::size_t i = 0; i < rmp.model.rows.size(); ++i) {
    const double slack = rmp.model.rows[i].rhs - milp::row_activity(rmp.model.rows[i], lp.lp.x);
    EXPECT_NEAR(slack * lp.lp.duals[i], 0.0, 1e-7);
  }
}

TEST(Master, MipWithOracleColumnHitsOptimum) {
  const auto b = built(toy("toy2"));
  const auto ref = oracle::brute_force(b.instance);
  const Rmp rmp = build_rmp(b, {initial_column(b), *make_column(b, ref.schedule)});
  const auto mip = milp::solve_mip(rmp.model);
  EXPECT_EQ(mip.status, milp::MipStatus::kOptimal);
  EXPECT_NEAR(mip.objective, static_cast<double>(dats::testing::kToy2Optimum), 1e-7);
}

TEST(Pricing, ZeroDualsGiveCompactOptimum) {
  for (core::Variant v : {core::Variant::kSdPT, core::Variant::kSiPT}) {
    const auto b = built(toy("toy2"), v);
    const Pricing pr = build_pricing(b, zero_duals(b));
    const auto r = milp::solve_mip(pr.model);
    EXPECT_NEAR(r.objective, static_cast<double>(dats::testing::kToy2Optimum), 1e-7);
  }
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const core::Instance inst = small(seed);
    const auto b = built(inst);
    const auto r = milp::solve_mip(build_pricing(b, zero_duals(b)).model);
    EXPECT_NEAR(r.objective, static_cast<double>(compact::solve_compact(inst, core::Variant::kSdPT).cost.total()),
                1e-7);
  }
}

TEST(Pricing, NoMissPenaltiesPriceAtZero) {
  core::Instance inst = toy("toy2");
  for (core::Truck& t : inst.trucks) t.miss_penalty = 0;
  const auto b = built(inst);
  const auto r = milp::solve_mip(build_pricing(b, zero_duals(b)).model);
  EXPECT_NEAR(r.objective, 0.0, 1e-9);
}

TEST(Pricing, ExistingColumnBoundsOptimum) {
  const auto b = built(toy("toy2"));
  const PseudoSchedule c = initial_column(b);
  const RmpLp lp = solve_rmp_lp(b, build_rmp(b, {c}));
  const Pricing pr = build_pricing(b, lp.duals);
  const auto x = extend_to_pricing(b, pr, *compact::encode(b, c.schedule));
  EXPECT_LE(pr.model.max_violation(x), 1e-9);
  EXPECT_NEAR(pr.model.objective(x), reduced_cost(b, lp.duals, c), 1e-7);
  const auto r = milp::solve_mip(pr.model);
  EXPECT_LE(r.objective, 1e-6);
}

TEST(Pricing, FixesBecomeBounds) {
  const auto b = built(toy("toy2"));
  const int var = b.index.arcs().front().var;
  const Pricing pr = build_pricing(b, zero_duals(b), {{var, false}});
  EXPECT_EQ(pr.model.vars[static_cast<std::size_t>(var)].ub, 0.0);
  const Pricing one = build_pricing(b, zero_duals(b), {{var, true}});
  EXPECT_EQ(one.model.vars[static_cast<std::size_t>(var)].lb, 1.0);
}

TEST(TriCycle, HandCandidate) {
  const auto b = built(toy("toy2"), core::Variant::kSdPT, false);
  std::vector<double> x(b.model.vars.size(), 0.0);
  EXPECT_TRUE(separate_tricycle(b, x).empty());
  x[static_cast<std::size_t>(arc_var(b, 1, 2))] = 1.0;
  x[static_cast<std::size_t>(arc_var(b, 1, compact::kDummy))] = 1.0;
  x[static_cast<std::size_t>(arc_var(b, 2, compact::kDummy))] = 1.0;
  const auto cuts = separate_tricycle(b, x);
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_EQ(cuts[0].family, 1);
  EXPECT_EQ(cuts[0].i, 1);
  EXPECT_EQ(cuts[0].j, 2);
  EXPECT_NEAR(cuts[0].lhs, 3.0, 1e-12);
  const milp::Row row = tricycle_row(b, cuts[0]);
  EXPECT_NEAR(milp::row_activity(row, x), 3.0, 1e-12);
  EXPECT_NEAR(milp::row_violation(row, x), 1.0, 1e-12);
}

TEST(TriCycle, FeasibleSchedulesGiveNoCuts) {
  const auto b = built(toy("toy2"));
  const auto ref = oracle::brute_force(b.instance);
  EXPECT_TRUE(separate_tricycle(b, *compact::encode(b, ref.schedule)).empty());
  EXPECT_TRUE(separate_tricycle(b, *compact::encode(b, initial_column(b).schedule)).empty());
}

TEST(TriCycle, MatchesNaiveCheck) {
  const auto b = built(toy("toy2"), core::Variant::kSdPT, false);
  const auto& arcs = b.index.arcs();
  const int n = static_cast<int>(b.instance.trucks.size());
  std::mt19937_64 rng(5);
  std::bernoulli_distribution on(0.08);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(b.model.vars.size(), 0.0);
    for (const compact::Arc& a : arcs) x[static_cast<std::size_t>(a.var)] = on(rng) ? 1.0 : 0.0;
    auto sum = [&](int from, int to) {
      double s = 0;
      for (const compact::Arc& a : arcs) {
        if (a.from == from && a.to == to) s += x[static_cast<std::size_t>(a.var)];
      }
      return s;
    };
    std::vector<TriCycleCut> expect;
    for (int f = 1; f <= 2; ++f) {
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          const double lhs = f == 1 ? sum(i, j) + sum(i, 0) + sum(j, 0) : sum(i, j) + sum(0, i) + sum(0, j);
          if (lhs > 2 + 1e-6) expect.push_back({f, i, j, lhs});
        }
      }
    }
    EXPECT_EQ(separate_tricycle(b, x), expect) << "trial " << trial;
  }
}

TEST(BranchAndPrice, Toy1) {
  const BpResult r = branch_and_price(toy("toy1"), core::Variant::kSdPT);
  EXPECT_EQ(r.stats.status, core::SolveStatus::kOptimal);
  EXPECT_EQ(r.cost.total(), 0);
  EXPECT_GE(r.stats.pricing_calls, 1);
  EXPECT_LE(r.stats.pricing_calls, 2);
  EXPECT_TRUE(r.stats.certified);
}

TEST(BranchAndPrice, Toy2ThreeWay) {
  for (core::Variant v : {core::Variant::kSdPT, core::Variant::kSiPT}) {
    const BpResult r = branch_and_price(toy("toy2"), v);
    EXPECT_EQ(r.stats.status, core::SolveStatus::kOptimal);
    EXPECT_EQ(r.cost.total(), dats::testing::kToy2Optimum);
    EXPECT_EQ(r.cost.total(), compact::solve_compact(toy("toy2"), v).cost.total());
    EXPECT_TRUE(core::check_feasibility(toy("toy2"), *r.schedule).empty());
    EXPECT_TRUE(r.stats.certified);
    EXPECT_GE(r.stats.min_reduced_cost, -1e-6);
  }
}

TEST(BranchAndPrice, MatchesOracle) {
  for (std::uint64_t seed = 100; seed < 108; ++seed) {
    const core::Variant v = seed % 2 ? core::Variant::kSiPT : core::Variant::kSdPT;
    const core::Instance inst = small(seed, v);
    const BpResult r = branch_and_price(inst, v);
    EXPECT_EQ(r.cost.total(), oracle::brute_force(inst).cost.total()) << seed;
    EXPECT_TRUE(r.stats.certified) << seed;
  }
}

TEST(BranchAndPrice, CombinatorialCutsKeepOptimum) {
  BpOptions o;
  o.combinatorial_cuts = true;
  EXPECT_EQ(branch_and_price(toy("toy2"), core::Variant::kSdPT, o).cost.total(), dats::testing::kToy2Optimum);
}

TEST(BranchAndPrice, TimeLimitKeepsIncumbent) {
  instgen::GenParams p = instgen::GenParams::for_horizon(16);
  p.docks = 6;
  p.trucks = 20;
  p.seed = 7;
  const core::Instance inst = instgen::generate(p);
  BpOptions o;
  o.time_limit = 0.01;
  const BpResult r = branch_and_price(inst, core::Variant::kSdPT, o);
  EXPECT_EQ(r.stats.status, core::SolveStatus::kLimit);
  ASSERT_TRUE(r.schedule);
  EXPECT_TRUE(core::check_feasibility(inst, *r.schedule).empty());
  EXPECT_FALSE(r.stats.certified);
}

TEST(BranchAndPrice, StatsRow) {
  const BpResult r = branch_and_price(toy("toy2"), core::Variant::kSdPT);
  EXPECT_EQ(stats_csv_header(), "instance,master_nodes,pricing_calls,columns,status,gap,seconds");
  const std::string row = stats_csv_row(r.stats);
  EXPECT_EQ(row.rfind("toy2,", 0), 0u);
  EXPECT_NE(row.find(",Optimal,,"), std::string::npos);
}
