#include "dats/cli/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dats/bp/branch_and_price.hpp"
#include "dats/compact/solve.hpp"
#include "dats/core/io.hpp"
#include "dats/oracle/brute_force.hpp"

namespace dats::cli {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fmt_gap(const BenchRow& r) {
  if (r.status == core::SolveStatus::kOptimal) return "";
  if (!std::isfinite(r.gap)) return "inf";
  std::ostringstream os;
  os << r.gap;
  return os.str();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

template <class T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "";
}

}  // namespace

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::kCompact:
      return "compact";
    case Engine::kBp:
      return "bp";
    case Engine::kOracle:
      return "oracle";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  const std::string n = lower(name);
  if (n == "compact") return Engine::kCompact;
  if (n == "bp") return Engine::kBp;
  if (n == "oracle") return Engine::kOracle;
  throw std::invalid_argument("unknown engine: " + name);
}

core::Variant parse_variant(const std::string& name) {
  const std::string n = lower(name);
  if (n == "sipt") return core::Variant::kSiPT;
  if (n == "sdpt") return core::Variant::kSdPT;
  throw std::invalid_argument("unknown variant: " + name);
}

SolveOutcome run_engine(const core::Instance& inst, Engine engine, core::Variant variant, const EngineOptions& opts) {
  SolveOutcome out;
  BenchRow& row = out.row;
  row.instance = inst.name;
  row.engine = engine;
  row.variant = variant;
  row.docks = inst.docks;
  switch (engine) {
    case Engine::kCompact: {
      compact::CompactOptions o;
      o.time_limit = opts.time_limit;
      o.combinatorial_cuts = opts.combinatorial_cuts;
      compact::CompactResult r = compact::solve_compact(inst, variant, o);
      row.nodes = r.stats.nodes;
      row.status = r.stats.status;
      row.gap = r.stats.gap;
      row.seconds = r.stats.seconds;
      if (r.schedule) row.objective = r.cost.total();
      out.schedule = std::move(r.schedule);
      break;
    }
    case Engine::kBp: {
      bp::BpOptions o;
      o.time_limit = opts.time_limit;
      o.combinatorial_cuts = opts.combinatorial_cuts;
      o.pool_threshold = opts.pool_threshold;
      bp::BpResult r = bp::branch_and_price(inst, variant, o);
      row.nodes = r.stats.master_nodes;
      row.pricing_calls = r.stats.pricing_calls;
      row.columns = r.stats.columns;
      row.status = r.stats.status;
      row.gap = r.stats.gap;
      row.seconds = r.stats.seconds;
      if (r.schedule) row.objective = r.cost.total();
      out.schedule = std::move(r.schedule);
      break;
    }
    case Engine::kOracle: {
      const auto t0 = std::chrono::steady_clock::now();
      oracle::OracleResult r = oracle::brute_force(inst);
      row.nodes = r.nodes;
      row.status = core::SolveStatus::kOptimal;
      row.objective = r.cost.total();
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out.schedule = std::move(r.schedule);
      break;
    }
  }
  return out;
}

std::string csv_header() { return "instance,engine,variant,nodes,pricing_calls,columns,status,gap,seconds,objective"; }

std::string csv_row(const BenchRow& r, bool times) {
  std::ostringstream os;
  os << r.instance << ',' << engine_name(r.engine) << ',' << core::variant_name(r.variant) << ',' << r.nodes << ','
     << opt(r.pricing_calls) << ',' << opt(r.columns) << ',' << core::status_name(r.status) << ',' << fmt_gap(r)
     << ',' << (times ? fmt_seconds(r.seconds) : "") << ',' << opt(r.objective);
  return os.str();
}

std::string text_table(const std::vector<BenchRow>& rows, bool times) {
  const std::vector<std::string> head{"Instance", "Engine", "Variant", "#Nodes", "#Pricing", "#Columns",
                                      "Status",   "Gap",    "CPU (s)", "Objective"};
  std::map<int, std::vector<std::vector<std::string>>> sections;
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) width[c] = head[c].size();
  for (const BenchRow& r : rows) {
    std::vector<std::string> cells{r.instance,          engine_name(r.engine),   core::variant_name(r.variant),
                                   std::to_string(r.nodes), opt(r.pricing_calls), opt(r.columns),
                                   core::status_name(r.status), fmt_gap(r), times ? fmt_seconds(r.seconds) : "",
                                   opt(r.objective)};
    for (std::size_t c = 0; c < cells.size(); ++c) width[c] = std::max(width[c], cells[c].size());
    sections[r.docks].push_back(std::move(cells));
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << "  ";
      if (c == 0) {
        os << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      } else {
        os << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
      }
    }
    os << '\n';
  };
  std::size_t total = 0;
  for (std::size_t w : width) total += w + 2;
  line(head);
  for (const auto& [docks, body] : sections) {
    os << std::string(total - 2, '-') << '\n' << "docks = " << docks << '\n';
    for (const auto& cells : body) line(cells);
  }
  return os.str();
}

std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BenchRow> bench(const std::vector<std::filesystem::path>& files, const std::vector<Engine>& engines,
                            core::Variant variant, const EngineOptions& opts, int jobs) {
  const std::size_t n = files.size() * engines.size();
  std::vector<BenchRow> rows(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&]() {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        const core::Instance inst = core::load_instance(core::read_file(files[k / engines.size()]));
        rows[k] = run_engine(inst, engines[k % engines.size()], variant, opts).row;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

int exit_code(core::SolveStatus s) {
  switch (s) {
    case core::SolveStatus::kOptimal:
    case core::SolveStatus::kFeasible:
      return 0;
    case core::SolveStatus::kLimit:
      return 2;
    case core::SolveStatus::kInfeasible:
      return 3;
  }
  return 1;
}

}  // namespace dats::cli
