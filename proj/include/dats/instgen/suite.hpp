#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dats/instgen/generator.hpp"

namespace dats::instgen {

/// One named entry of a suite file. Two layouts are accepted:
///   "blocks": [{"docks": d, "trucks": {"first", "last", "step"}}] or with
///             {"per_dock_min", "per_dock_max", "step"}; generated as generate_suite.
///   "draws":  {"count", "horizon": [lo, hi], "docks": [lo, hi], "trucks": [lo, hi],
///             "scenarios": [lo, hi], "variants": ["sdpt", "sipt"]}; instance k cycles
///             through the horizons, docks and variants and spreads the truck counts
///             evenly over k.
/// "horizon" is an integer for block suites. "seed" is the default seed base.
struct SuiteSpec {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<GenParams> params;  // one per instance, seeds included
};

/// Throws std::invalid_argument on an unknown suite or a malformed entry.
SuiteSpec parse_suite(std::string_view json_text, const std::string& name,
                      std::optional<std::uint64_t> seed = std::nullopt);
std::vector<std::string> suite_names(std::string_view json_text);

/// Generates every instance of the suite.
std::vector<core::Instance> generate_suite(const SuiteSpec& spec);

}  // namespace dats::instgen
