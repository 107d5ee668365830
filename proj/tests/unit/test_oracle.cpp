#include <gtest/gtest.h>

#include "dats/core/evaluate.hpp"
#include "dats/core/greedy.hpp"
#include "dats/instgen/generator.hpp"
#include "dats/oracle/brute_force.hpp"
#include "fixtures.hpp"

using namespace dats;
using dats::testing::toy;

namespace {

core::Instance tiny(std::uint64_t seed, int trucks) {
  instgen::GenParams p = instgen::GenParams::for_horizon(10);
  p.docks = 1 + static_cast<int>(seed % 2);
  p.trucks = trucks;
  p.scenario_count = {1, 2};
  p.seed = seed;
  return instgen::generate(p);
}

}  // namespace

TEST(Oracle, Toy1) {
  const auto r = oracle::brute_force(toy("toy1"));
  EXPECT_EQ(r.cost.total(), 0);
  ASSERT_EQ(r.schedule.per_dock[0].size(), 1u);
  EXPECT_EQ(r.schedule.per_dock[0][0].start, 1);
}

TEST(Oracle, Toy1WindowTooShort) {
  core::Instance inst = toy("toy1");
  inst.trucks[0].deadline = 4;  // 1 + 1 + 3 = 5 > 4
  const auto r = oracle::brute_force(inst);
  EXPECT_EQ(r.cost.total(), 100);
  EXPECT_EQ(r.schedule.unserved, (std::set<core::TruckId>{1}));
}

TEST(Oracle, Toy2ReferenceValue) {
  const core::Instance inst = toy("toy2");
  const auto r = oracle::brute_force(inst);
  EXPECT_EQ(r.cost.total(), dats::testing::kToy2Optimum);
  EXPECT_TRUE(core::check_feasibility(inst, r.schedule).empty());
  EXPECT_EQ(core::evaluate(inst, r.schedule).total(), r.cost.total());
}

TEST(Oracle, RefusesOversized) {
  core::Instance inst = tiny(1, 7);
  EXPECT_THROW(oracle::brute_force(inst), oracle::LimitError);
  inst = toy("toy2");
  inst.docks = 4;
  EXPECT_THROW(oracle::brute_force(inst), oracle::LimitError);
}

TEST(Oracle, PruningMatchesFullEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const core::Instance inst = tiny(seed, 3);
    const auto fast = oracle::brute_force(inst);
    const auto full = oracle::brute_force(inst, {}, true);
    EXPECT_EQ(fast.cost.total(), full.cost.total()) << "seed " << seed;
  }
}

TEST(Oracle, BelowGreedy) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const core::Instance inst = tiny(seed, 5);
    const auto r = oracle::brute_force(inst);
    EXPECT_TRUE(core::check_feasibility(inst, r.schedule).empty());
    EXPECT_LE(r.cost.total(), core::evaluate(inst, core::chronological_fill(inst)).total());
  }
}

TEST(Oracle, MonotoneInScenariosAndCapacity) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const core::Instance inst = tiny(seed, 4);
    const core::Cost base = oracle::brute_force(inst).cost.total();

    core::Instance more = inst;
    core::ResourceScenario extra = more.trucks[0].scenarios[0];
    extra.workers = std::max(0, extra.workers - 1);
    more.trucks[0].scenarios.push_back(extra);
    if (more.trucks[0].scenarios.size() <= 3) {
      EXPECT_EQ(oracle::brute_force(more).cost.total(), base);
    }

    core::Instance cap = inst;
    cap.capacity.workers += 2;
    EXPECT_LE(oracle::brute_force(cap).cost.total(), base);
  }
}
