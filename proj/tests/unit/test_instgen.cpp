#include <gtest/gtest.h>

#include <algorithm>

#include "dats/core/evaluate.hpp"
#include "dats/core/io.hpp"
#include "dats/instgen/generator.hpp"
#include "dats/instgen/rng.hpp"
#include "dats/instgen/suite.hpp"
#include "fixtures.hpp"

using namespace dats;
using namespace dats::instgen;

namespace {

GenParams params(int docks, int trucks, std::uint64_t seed, core::Variant v = core::Variant::kSdPT) {
  GenParams p = GenParams::for_horizon(16);
  p.docks = docks;
  p.trucks = trucks;
  p.seed = seed;
  p.variant = v;
  return p;
}

}  // namespace

TEST(Generator, HorizonDefaults) {
  const GenParams p = GenParams::for_horizon(16);
  EXPECT_EQ(p.arrival.lo, 0);
  EXPECT_EQ(p.arrival.hi, 12);
  EXPECT_EQ(p.processing.lo, 2);
  EXPECT_EQ(p.processing.hi, 4);
}

TEST(Generator, Deterministic) {
  const auto a = core::save_instance(generate(params(3, 9, 42)));
  const auto b = core::save_instance(generate(params(3, 9, 42)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, core::save_instance(generate(params(3, 9, 43))));
}

TEST(Generator, DefaultRanges) {
  const core::Instance inst = generate(params(20, 60, 1));
  EXPECT_EQ(inst.trucks.size(), 60u);
  for (const core::Truck& t : inst.trucks) {
    EXPECT_GE(t.arrival, 0);
    EXPECT_LE(t.arrival, 12);
    EXPECT_GE(t.setup, 1);
    EXPECT_LE(t.setup, 3);
    EXPECT_GE(t.wait_cost, 5);
    EXPECT_LE(t.wait_cost, 10);
    EXPECT_EQ(t.miss_penalty, 100 * t.wait_cost);
    EXPECT_GE(t.scenarios.size(), 1u);
    EXPECT_LE(t.scenarios.size(), 4u);
    EXPECT_LE(t.deadline, inst.horizon);
    for (const core::ResourceScenario& s : t.scenarios) {
      EXPECT_GE(s.processing, 2);
      EXPECT_LE(s.processing, 4);
    }
  }
  EXPECT_NO_THROW(core::validate(inst));
}

TEST(Generator, SiptSharesProcessing) {
  const core::Instance inst = generate(params(4, 14, 5, core::Variant::kSiPT));
  EXPECT_TRUE(inst.scenario_invariant());
  for (const core::Truck& t : inst.trucks) {
    for (const auto& s : t.scenarios) EXPECT_EQ(s.processing, t.scenarios[0].processing);
  }
}

TEST(Generator, DeadlineRule) {
  const Generated g = generate_detailed(params(5, 18, 11));
  for (std::size_t p = 0; p < g.draws.size(); ++p) {
    const TruckDraws& d = g.draws[p];
    const int pmax = *std::max_element(d.processing.begin(), d.processing.end());
    EXPECT_EQ(g.instance.trucks[p].deadline, std::min(16, d.arrival + d.setup + pmax + d.slack));
  }
}

TEST(Generator, UnclampedTrucksFitEveryScenario) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Generated g = generate_detailed(params(2, 8, seed));
    for (std::size_t p = 0; p < g.draws.size(); ++p) {
      const TruckDraws& d = g.draws[p];
      const int pmax = *std::max_element(d.processing.begin(), d.processing.end());
      if (d.arrival + d.setup + pmax + d.slack > 16) continue;
      const core::Truck& t = g.instance.trucks[p];
      for (std::size_t s = 0; s < t.scenarios.size(); ++s) EXPECT_TRUE(t.can_fit(static_cast<int>(s)));
    }
  }
}

TEST(Generator, InstanceNames) {
  EXPECT_EQ(instance_name(params(20, 60, 0), 120), "tf-16-d-20-tr-60-sce-120");
  EXPECT_EQ(instance_name(params(24, 72, 0), 140), "tf-16-d-24-tr-72-sce-140");
  GenParams toy = GenParams::for_horizon(8);
  toy.docks = 1;
  toy.trucks = 1;
  EXPECT_EQ(instance_name(toy, 1), "tf-8-d-1-tr-1-sce-1");
  const core::Instance inst = generate(params(3, 9, 2));
  EXPECT_EQ(inst.name, instance_name(params(3, 9, 2), inst.total_scenarios()));
}

TEST(Generator, RejectsInvalidParams) {
  GenParams p = params(0, 5, 1);
  EXPECT_THROW(generate(p), std::invalid_argument);
  p = params(1, 5, 1);
  p.setup = {3, 1};
  EXPECT_THROW(generate(p), std::invalid_argument);
}

TEST(Suite, TableBlockAndPerDockRule) {
  const auto block = generate_suite(params(1, 1, 7), {20}, fixed_counts(60, 100, 5));
  ASSERT_EQ(block.size(), 9u);
  EXPECT_EQ(block.front().trucks.size(), 60u);
  EXPECT_EQ(block.back().trucks.size(), 100u);
  EXPECT_EQ(block.front().name.rfind("tf-16-d-20-tr-60-sce-", 0), 0u);

  const auto small = generate_suite(params(1, 1, 7), {2}, per_dock_counts(3, 4));
  ASSERT_EQ(small.size(), 3u);
  EXPECT_EQ(small[0].trucks.size(), 6u);
  EXPECT_EQ(small[2].trucks.size(), 8u);

  EXPECT_TRUE(generate_suite(params(1, 1, 7), {}, per_dock_counts(3, 4)).empty());
  EXPECT_THROW(generate_suite(params(1, 1, 7), {4}, fixed_counts(5, 6)), std::invalid_argument);
}

TEST(Suite, SeedsFollowIndex) {
  const auto suite = generate_suite(params(1, 1, 100), {2}, per_dock_counts(3, 4));
  EXPECT_EQ(core::save_instance(suite[1]), core::save_instance(generate(params(2, 7, 101))));
}

TEST(Suite, ConfigEntries) {
  const SuiteSpec oracle = dats::testing::suite("oracle");
  ASSERT_EQ(oracle.params.size(), 50u);
  int sipt = 0;
  for (const GenParams& p : oracle.params) {
    EXPECT_LE(p.docks, 3);
    EXPECT_LE(p.trucks, 6);
    EXPECT_LE(p.horizon, 14);
    EXPECT_LE(p.scenario_count.hi, 3);
    sipt += p.variant == core::Variant::kSiPT;
  }
  EXPECT_EQ(sipt, 25);

  const SuiteSpec medium = dats::testing::suite("medium");
  ASSERT_EQ(medium.params.size(), 30u);
  for (const GenParams& p : medium.params) {
    EXPECT_GE(p.docks, 4);
    EXPECT_LE(p.docks, 6);
    EXPECT_GE(p.trucks, 12);
    EXPECT_LE(p.trucks, 20);
    EXPECT_EQ(p.horizon, 16);
  }
  EXPECT_EQ(medium.params.front().trucks, 12);
  EXPECT_EQ(medium.params.back().trucks, 20);

  const SuiteSpec small = instgen::parse_suite(core::read_file(dats::testing::source_path("config/suites.json")),
                                               "grid-small", 7);
  EXPECT_EQ(small.params.size(), 12u);
  EXPECT_EQ(small.params[0].seed, 7u);
  EXPECT_THROW(dats::testing::suite("nope"), std::invalid_argument);
}

TEST(Rng, StreamsAreStable) {
  CounterRng a(9);
  CounterRng b(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(0, 1000), b.uniform(0, 1000));
}
