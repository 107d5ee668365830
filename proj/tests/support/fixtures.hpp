#pragma once

#include <string>
#include <vector>

#include "dats/core/io.hpp"
#include "dats/instgen/suite.hpp"

namespace dats::testing {

inline std::string source_path(const std::string& rel) { return std::string(DATS_SOURCE_DIR) + "/" + rel; }

inline core::Instance toy(const std::string& name) {
  return core::load_instance(core::read_file(source_path("tests/data/" + name + ".json")));
}

// Optimum of toy2 under both variants, from the brute-force oracle.
inline constexpr core::Cost kToy2Optimum = 516;

inline instgen::SuiteSpec suite(const std::string& name) {
  return instgen::parse_suite(core::read_file(source_path("config/suites.json")), name);
}

}  // namespace dats::testing
