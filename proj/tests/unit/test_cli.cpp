#include <gtest/gtest.h>

#include "dats/cli/bench.hpp"
#include "fixtures.hpp"

using namespace dats;

TEST(Cli, ParsesNames) {
  EXPECT_EQ(cli::parse_engine("BP"), cli::Engine::kBp);
  EXPECT_EQ(cli::parse_variant("SiPT"), core::Variant::kSiPT);
  EXPECT_THROW(cli::parse_engine("cplex"), std::invalid_argument);
  EXPECT_THROW(cli::parse_variant("x"), std::invalid_argument);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli::exit_code(core::SolveStatus::kOptimal), 0);
  EXPECT_EQ(cli::exit_code(core::SolveStatus::kFeasible), 0);
  EXPECT_EQ(cli::exit_code(core::SolveStatus::kLimit), 2);
  EXPECT_EQ(cli::exit_code(core::SolveStatus::kInfeasible), 3);
}

TEST(Cli, RowsForEveryEngine) {
  const core::Instance inst = dats::testing::toy("toy2");
  for (cli::Engine e : {cli::Engine::kCompact, cli::Engine::kBp, cli::Engine::kOracle}) {
    const cli::SolveOutcome r = cli::run_engine(inst, e, core::Variant::kSdPT, {});
    ASSERT_TRUE(r.schedule);
    EXPECT_EQ(r.row.objective, dats::testing::kToy2Optimum);
    EXPECT_EQ(r.row.pricing_calls.has_value(), e == cli::Engine::kBp);
  }
}

TEST(Cli, CsvFormatting) {
  cli::BenchRow r;
  r.instance = "a";
  r.engine = cli::Engine::kBp;
  r.nodes = 3;
  r.pricing_calls = 4;
  r.columns = 9;
  r.status = core::SolveStatus::kFeasible;
  r.gap = 0.25;
  r.seconds = 1.5;
  r.objective = 12;
  EXPECT_EQ(cli::csv_row(r), "a,bp,SdPT,3,4,9,Feasible,0.25,1.500,12");
  EXPECT_EQ(cli::csv_row(r, false), "a,bp,SdPT,3,4,9,Feasible,0.25,,12");
  r.status = core::SolveStatus::kOptimal;
  r.engine = cli::Engine::kCompact;
  r.pricing_calls.reset();
  r.columns.reset();
  EXPECT_EQ(cli::csv_row(r, false), "a,compact,SdPT,3,,,Optimal,,,12");
}

TEST(Cli, TableGroupsByDocks) {
  cli::BenchRow a;
  a.instance = "two";
  a.docks = 2;
  cli::BenchRow b;
  b.instance = "one";
  b.docks = 1;
  const std::string t = cli::text_table({a, b});
  const auto one = t.find("docks = 1");
  const auto two = t.find("docks = 2");
  ASSERT_NE(one, std::string::npos);
  ASSERT_NE(two, std::string::npos);
  EXPECT_LT(one, t.find("one"));
  EXPECT_LT(t.find("one"), two);
  EXPECT_LT(two, t.find("two"));
}
