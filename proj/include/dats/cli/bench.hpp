#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dats/core/types.hpp"

namespace dats::cli {

enum class Engine { kCompact, kBp, kOracle };
const char* engine_name(Engine e);
/// Throws std::invalid_argument on an unknown name.
Engine parse_engine(const std::string& name);
/// "sipt" or "sdpt", case-insensitive.
core::Variant parse_variant(const std::string& name);

struct EngineOptions {
  double time_limit = 0.0;  // seconds, 0 = none
  double pool_threshold = -1e-6;
  bool combinatorial_cuts = false;
};

struct BenchRow {
  std::string instance;
  Engine engine = Engine::kCompact;
  core::Variant variant = core::Variant::kSdPT;
  long nodes = 0;
  std::optional<long> pricing_calls;  // bp only
  std::optional<long> columns;        // bp only
  core::SolveStatus status = core::SolveStatus::kLimit;
  double gap = 0.0;
  double seconds = 0.0;
  std::optional<core::Cost> objective;
  int docks = 0;  // for grouping, not printed
};

struct SolveOutcome {
  BenchRow row;
  std::optional<core::Schedule> schedule;
};

/// Runs one engine. The oracle ignores the variant and the options.
SolveOutcome run_engine(const core::Instance& inst, Engine engine, core::Variant variant, const EngineOptions& opts);

std::string csv_header();
/// Gap is blank for Optimal rows; seconds is blank when `times` is false.
std::string csv_row(const BenchRow& row, bool times = true);

/// Aligned text table, one section per dock count in increasing order.
std::string text_table(const std::vector<BenchRow>& rows, bool times = true);

/// *.json files of a directory in name order.
std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir);

/// Solves every file with every engine on `jobs` threads. Rows follow file order, then
/// engine order.
std::vector<BenchRow> bench(const std::vector<std::filesystem::path>& files, const std::vector<Engine>& engines,
                            core::Variant variant, const EngineOptions& opts, int jobs);

/// Exit code of a solve: 0 optimal or feasible, 2 limit, 3 infeasible.
int exit_code(core::SolveStatus s);
inline constexpr int kUsageExit = 64;

}  // namespace dats::cli
