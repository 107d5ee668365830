#include <gtest/gtest.h>

#include "dats/core/dominance.hpp"
#include "dats/core/evaluate.hpp"
#include "dats/core/greedy.hpp"
#include "dats/core/io.hpp"
#include "fixtures.hpp"

using namespace dats::core;
using dats::testing::toy;

namespace {

Schedule toy1_at(Period start) {
  Schedule s;
  s.per_dock = {{{1, 0, start}}};
  return s;
}

Instance one_truck(std::vector<ResourceScenario> scenarios) {
  Instance inst = toy("toy1");
  inst.trucks[0].scenarios = std::move(scenarios);
  return inst;
}

}  // namespace

TEST(Io, LoadsMinimalDocument) {
  const Instance inst = toy("toy1");
  EXPECT_EQ(inst.docks, 1);
  ASSERT_EQ(inst.trucks.size(), 1u);
  EXPECT_EQ(inst.trucks[0].miss_penalty, 100);
  EXPECT_EQ(inst.capacity.workers, 5);
}

TEST(Io, DuplicateIdNamed) {
  Instance inst = toy("toy2");
  inst.trucks[1].id = 1;
  try {
    load_instance(save_instance(inst));
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }
}

TEST(Io, RejectsMalformedAndUnknownKeys) {
  EXPECT_THROW(load_instance("{\"name\": "), ParseError);
  std::string text = save_instance(toy("toy1"));
  text.insert(text.find('{') + 1, "\"extra\": 1,");
  EXPECT_ANY_THROW(load_instance(text));
}

TEST(Io, RoundTripAndCanonicalText) {
  for (const char* name : {"toy1", "toy2"}) {
    const Instance inst = toy(name);
    const std::string text = save_instance(inst);
    EXPECT_EQ(load_instance(text), inst);
    EXPECT_EQ(save_instance(load_instance(text)), text);
  }
  Instance empty = toy("toy1");
  empty.trucks.clear();
  EXPECT_EQ(load_instance(save_instance(empty)), empty);
}

TEST(Io, ScheduleRoundTrip) {
  const Instance inst = toy("toy2");
  Schedule s = Schedule::empty_for(inst);
  s.unserved.erase(2);
  s.per_dock[1].push_back({2, 1, 3});
  const std::string text = save_schedule(inst.name, s, 42);
  const ScheduleDocument doc = load_schedule(text);
  EXPECT_EQ(doc.instance, "toy2");
  EXPECT_EQ(doc.schedule, s);
  EXPECT_EQ(doc.objective, 42);
}

TEST(Evaluate, Toy1) {
  const Instance inst = toy("toy1");
  EXPECT_EQ(evaluate(inst, toy1_at(1)).total(), 0);
  EXPECT_EQ(evaluate(inst, toy1_at(3)).waiting_cost, 2);
  const CostBreakdown miss = evaluate(inst, Schedule::empty_for(inst));
  EXPECT_EQ(miss.miss_cost, 100);
  EXPECT_EQ(miss.total(), 100);
}

TEST(Evaluate, StructuralErrors) {
  const Instance inst = toy("toy1");
  Schedule bad = toy1_at(1);
  bad.per_dock[0][0].truck = 9;
  EXPECT_THROW(evaluate(inst, bad), ValidationError);
  Schedule docks = toy1_at(1);
  docks.per_dock.emplace_back();
  EXPECT_THROW(evaluate(inst, docks), ValidationError);
}

TEST(Feasibility, Toy1Windows) {
  const Instance inst = toy("toy1");
  EXPECT_TRUE(check_feasibility(inst, toy1_at(1)).empty());
  EXPECT_TRUE(check_feasibility(inst, toy1_at(3)).empty());  // 3 + 1 + 3 = 7
  const auto v = check_feasibility(inst, toy1_at(inst.trucks[0].deadline));
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::kWindow);
  EXPECT_EQ(v[0].truck, 1);
  EXPECT_FALSE(check_feasibility(inst, toy1_at(0)).empty());  // before arrival
}

TEST(Feasibility, ResourceOverlapNamesPeriod) {
  // Trucks 1 and 2 of toy2 on separate docks, scenario 0 each: 4 + 3 workers > 6.
  const Instance inst = toy("toy2");
  Schedule s = Schedule::empty_for(inst);
  s.unserved = {3, 4};
  s.per_dock[0] = {{1, 0, 1}};  // holds periods 3..5
  s.per_dock[1] = {{2, 0, 1}};  // holds periods 3..5
  const auto v = check_feasibility(inst, s);
  ASSERT_FALSE(v.empty());
  std::set<Period> periods;
  for (const Violation& x : v) {
    EXPECT_EQ(x.kind, ViolationKind::kResource);
    periods.insert(x.period);
  }
  EXPECT_EQ(periods, (std::set<Period>{3, 4, 5}));
  // Separating the two windows clears the conflict.
  s.per_dock[0] = {{1, 0, 0}};  // periods 2..4
  s.per_dock[1] = {{2, 0, 3}};  // periods 5..7
  EXPECT_TRUE(check_feasibility(inst, s).empty());
}

TEST(Feasibility, Sequencing) {
  const Instance inst = toy("toy2");
  Schedule s = Schedule::empty_for(inst);
  s.unserved = {2, 4};
  s.per_dock[0] = {{1, 1, 0}, {3, 0, 3}};  // 1 finishes at 0 + 1 + 3 = 4 > 3
  const auto v = check_feasibility(inst, s);
  ASSERT_FALSE(v.empty());
  bool sequencing = false;
  for (const Violation& x : v) sequencing = sequencing || x.kind == ViolationKind::kSequencing;
  EXPECT_TRUE(sequencing);
  s.per_dock[0][1].start = 4;
  EXPECT_TRUE(check_feasibility(inst, s).empty());
}

TEST(Feasibility, ResourceWindow) {
  const Truck& t = toy("toy2").trucks[2];
  const Window w = resource_window(t, 0, 4);
  EXPECT_EQ(w.first, 7);
  EXPECT_EQ(w.last, 8);
}

TEST(Dominance, TimeWise) {
  const auto r = prune_dominated_scenarios(one_truck({{2, 1, 1, 3}, {2, 1, 1, 4}}));
  ASSERT_EQ(r.instance.trucks[0].scenarios.size(), 1u);
  EXPECT_EQ(r.instance.trucks[0].scenarios[0].processing, 3);
  ASSERT_EQ(r.report.removals.size(), 1u);
  EXPECT_EQ(r.report.removals[0].removed, 1);
  EXPECT_EQ(r.report.removals[0].dominated_by, 0);
}

TEST(Dominance, ResourceWise) {
  const auto r = prune_dominated_scenarios(one_truck({{2, 1, 1, 3}, {3, 1, 1, 3}}));
  ASSERT_EQ(r.instance.trucks[0].scenarios.size(), 1u);
  EXPECT_EQ(r.instance.trucks[0].scenarios[0].workers, 2);
}

TEST(Dominance, IncomparableKept) {
  const auto r = prune_dominated_scenarios(one_truck({{2, 1, 1, 3}, {1, 2, 1, 3}}));
  EXPECT_EQ(r.instance.trucks[0].scenarios.size(), 2u);
  EXPECT_TRUE(r.report.removals.empty());
}

TEST(Dominance, DuplicatesKeepFirstAndRestore) {
  const auto r = prune_dominated_scenarios(one_truck({{1, 2, 1, 3}, {2, 1, 1, 3}, {2, 1, 1, 3}}));
  ASSERT_EQ(r.instance.trucks[0].scenarios.size(), 2u);
  EXPECT_EQ(r.report.original_index(0, 1), 1);
  Schedule s;
  s.per_dock = {{{1, 1, 1}}};
  const Schedule back = restore_scenario_indices(one_truck({{1, 2, 1, 3}, {2, 1, 1, 3}, {2, 1, 1, 3}}), r.report, s);
  EXPECT_EQ(back.per_dock[0][0].scenario, 1);
}

TEST(Greedy, Toy1AndZeroCapacity) {
  Instance inst = toy("toy1");
  const Schedule s = chronological_fill(inst);
  EXPECT_TRUE(check_feasibility(inst, s).empty());
  EXPECT_EQ(evaluate(inst, s).total(), 0);

  Instance none = toy("toy2");
  none.capacity = {0, 0, 0};
  const Schedule e = chronological_fill(none);
  Cost g = 0;
  for (const Truck& t : none.trucks) g += t.miss_penalty;
  EXPECT_EQ(evaluate(none, e).total(), g);
}

TEST(Greedy, Toy2FeasibleAboveOptimum) {
  const Instance inst = toy("toy2");
  const Schedule s = chronological_fill(inst);
  EXPECT_TRUE(check_feasibility(inst, s).empty());
  EXPECT_GE(evaluate(inst, s).total(), dats::testing::kToy2Optimum);
}
