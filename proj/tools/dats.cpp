#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dats/cli/bench.hpp"
#include "dats/core/evaluate.hpp"
#include "dats/core/io.hpp"
#include "dats/instgen/generator.hpp"
#include "dats/instgen/suite.hpp"
#include "dats/oracle/brute_force.hpp"

namespace fs = std::filesystem;
using namespace dats;

namespace {

struct RangeFlag {
  const char* name;
  instgen::IntRange instgen::GenParams::*field;
  std::vector<int> value;
};

struct GenArgs {
  int horizon = 16;
  std::optional<int> docks;
  std::optional<int> trucks;
  std::optional<std::uint64_t> seed;
  std::string variant = "sdpt";
  std::string out;
  std::string suite;
  std::string suites_file = DATS_SUITES_FILE;
  int miss_multiplier = 100;
  std::vector<int> capacity_factor;
  std::vector<RangeFlag> ranges{
      {"--scenario-count", &instgen::GenParams::scenario_count, {}},
      {"--arrival", &instgen::GenParams::arrival, {}},
      {"--processing", &instgen::GenParams::processing, {}},
      {"--setup", &instgen::GenParams::setup, {}},
      {"--window-slack", &instgen::GenParams::window_slack, {}},
      {"--workers", &instgen::GenParams::workers, {}},
      {"--equipment", &instgen::GenParams::equipment, {}},
      {"--vehicles", &instgen::GenParams::vehicles, {}},
      {"--wait-cost", &instgen::GenParams::wait_cost, {}},
  };
};

struct SolveArgs {
  std::string instance;
  std::string engine = "compact";
  std::string variant = "sdpt";
  std::string out;
  double time_limit = 0.0;
  double pool_threshold = -1e-6;
  bool cuts = false;
};

struct VerifyArgs {
  std::string instance;
  std::string schedule;
};

struct BenchArgs {
  std::string dir;
  std::vector<std::string> engines{"compact", "bp"};
  std::string variant = "sdpt";
  double time_limit = 0.0;
  double pool_threshold = -1e-6;
  bool cuts = false;
  int jobs = 1;
  bool no_times = false;
  std::string csv;
};

void write_instances(const std::vector<core::Instance>& insts, const fs::path& dir) {
  fs::create_directories(dir);
  for (const core::Instance& inst : insts) {
    const fs::path path = dir / (inst.name + ".json");
    core::write_file(path, core::save_instance(inst));
    std::cout << path.string() << '\n';
  }
}

int cmd_gen(GenArgs& a) {
  std::vector<core::Instance> insts;
  if (!a.suite.empty()) {
    const instgen::SuiteSpec spec = instgen::parse_suite(core::read_file(a.suites_file), a.suite, a.seed);
    insts = instgen::generate_suite(spec);
  } else {
    if (!a.docks || !a.trucks) throw CLI::ValidationError("gen", "--docks and --trucks are required without --suite");
    instgen::GenParams p = instgen::GenParams::for_horizon(a.horizon);
    p.docks = *a.docks;
    p.trucks = *a.trucks;
    p.seed = a.seed.value_or(0);
    p.variant = cli::parse_variant(a.variant);
    p.miss_multiplier = a.miss_multiplier;
    if (!a.capacity_factor.empty()) {
      p.capacity_num = a.capacity_factor[0];
      p.capacity_den = a.capacity_factor[1];
    }
    for (const RangeFlag& r : a.ranges) {
      if (!r.value.empty()) p.*(r.field) = {r.value[0], r.value[1]};
    }
    insts.push_back(instgen::generate(p));
  }
  write_instances(insts, a.out);
  return 0;
}

int cmd_solve(const SolveArgs& a) {
  const core::Instance inst = core::load_instance(core::read_file(a.instance));
  cli::EngineOptions o;
  o.time_limit = a.time_limit;
  o.pool_threshold = a.pool_threshold;
  o.combinatorial_cuts = a.cuts;
  const cli::SolveOutcome r = cli::run_engine(inst, cli::parse_engine(a.engine), cli::parse_variant(a.variant), o);
  if (r.schedule) {
    fs::path out = a.out;
    if (out.empty()) out = fs::path(a.instance).replace_extension(".schedule.json");
    core::write_file(out, core::save_schedule(inst.name, *r.schedule, r.row.objective));
  }
  std::cout << cli::csv_row(r.row) << '\n';
  return cli::exit_code(r.row.status);
}

int cmd_verify(const VerifyArgs& a) {
  const core::Instance inst = core::load_instance(core::read_file(a.instance));
  const core::ScheduleDocument doc = core::load_schedule(core::read_file(a.schedule));
  bool ok = true;
  if (doc.instance != inst.name) {
    std::cout << "instance name mismatch: schedule is for " << doc.instance << '\n';
    ok = false;
  }
  std::vector<core::Violation> violations;
  try {
    violations = core::check_feasibility(inst, doc.schedule);
  } catch (const core::ValidationError& e) {
    std::cout << "structure: " << e.what() << "\nFAIL\n";
    return 1;
  }
  for (const core::Violation& v : violations) std::cout << "violation: " << v.message << '\n';
  ok = ok && violations.empty();
  const core::CostBreakdown cost = core::evaluate(inst, doc.schedule);
  std::cout << "waiting " << cost.waiting_cost << " miss " << cost.miss_cost << " total " << cost.total() << '\n';
  if (doc.objective && *doc.objective != cost.total()) {
    std::cout << "objective mismatch: recorded " << *doc.objective << ", evaluated " << cost.total() << '\n';
    ok = false;
  }
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

int cmd_bench(const BenchArgs& a) {
  std::vector<cli::Engine> engines;
  for (const std::string& e : a.engines) engines.push_back(cli::parse_engine(e));
  cli::EngineOptions o;
  o.time_limit = a.time_limit;
  o.pool_threshold = a.pool_threshold;
  o.combinatorial_cuts = a.cuts;
  const auto rows = cli::bench(cli::instance_files(a.dir), engines, cli::parse_variant(a.variant), o, a.jobs);
  std::string csv = cli::csv_header() + '\n';
  for (const cli::BenchRow& r : rows) csv += cli::csv_row(r, !a.no_times) + '\n';
  if (a.csv.empty()) {
    std::cout << csv;
    if (!rows.empty()) std::cout << '\n' << cli::text_table(rows, !a.no_times);
  } else {
    core::write_file(a.csv, csv);
    std::cout << cli::text_table(rows, !a.no_times);
  }
  return 0;
}

void solver_flags(CLI::App* c, std::string& variant, double& time_limit, double& pool, bool& cuts) {
  c->add_option("--variant", variant, "sipt or sdpt")->check(CLI::IsMember({"sipt", "sdpt"}, CLI::ignore_case));
  c->add_option("--time-limit", time_limit, "seconds per solve, 0 = none")->check(CLI::NonNegativeNumber);
  c->add_option("--pool-threshold", pool, "reduced cost at or below which pricing solutions become columns");
  c->add_flag("--enable-combinatorial-cuts", cuts, "separate resource cover cuts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dock assignment and truck scheduling with resource scenarios"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "generate instance files");
  g->add_option("--T", gen.horizon, "horizon")->check(CLI::PositiveNumber);
  g->add_option("--docks", gen.docks)->check(CLI::PositiveNumber);
  g->add_option("--trucks", gen.trucks)->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed);
  g->add_option("--variant", gen.variant)->check(CLI::IsMember({"sipt", "sdpt"}, CLI::ignore_case));
  g->add_option("--miss-multiplier", gen.miss_multiplier)->check(CLI::NonNegativeNumber);
  g->add_option("--capacity-factor", gen.capacity_factor, "NUM,DEN")->expected(2)->delimiter(',');
  for (RangeFlag& r : gen.ranges) g->add_option(r.name, r.value, "LO,HI")->expected(2)->delimiter(',');
  g->add_option("--out", gen.out, "output directory")->required();
  g->add_option("--suite", gen.suite, "named suite from the suites file");
  g->add_option("--suites-file", gen.suites_file)->check(CLI::ExistingFile);

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "solve one instance");
  s->add_option("instance", solve.instance)->required()->check(CLI::ExistingFile);
  s->add_option("--engine", solve.engine)->check(CLI::IsMember({"compact", "bp", "oracle"}, CLI::ignore_case));
  s->add_option("--out", solve.out, "schedule file (default: next to the instance)");
  solver_flags(s, solve.variant, solve.time_limit, solve.pool_threshold, solve.cuts);

  VerifyArgs verify;
  CLI::App* v = app.add_subcommand("verify", "check a schedule against its instance");
  v->add_option("instance", verify.instance)->required()->check(CLI::ExistingFile);
  v->add_option("schedule", verify.schedule)->required()->check(CLI::ExistingFile);

  BenchArgs bench;
  CLI::App* b = app.add_subcommand("bench", "solve a directory of instances");
  b->add_option("dir", bench.dir)->required()->check(CLI::ExistingDirectory);
  b->add_option("--engines", bench.engines)->delimiter(',');
  b->add_option("--jobs", bench.jobs)->check(CLI::PositiveNumber);
  b->add_flag("--no-times", bench.no_times, "leave the seconds column blank");
  b->add_option("--csv", bench.csv, "write the CSV here and only the table to stdout");
  solver_flags(b, bench.variant, bench.time_limit, bench.pool_threshold, bench.cuts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsageExit;
  }
  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(solve);
    if (*v) return cmd_verify(verify);
    return cmd_bench(bench);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsageExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
