#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dats/core/types.hpp"

namespace dats::core {

/// Parses an instance document and validates it. Unknown keys are rejected.
Instance load_instance(std::string_view text);
/// Canonical text: fixed key order, two-space indentation, trailing newline.
std::string save_instance(const Instance& inst);

struct ScheduleDocument {
  std::string instance;
  Schedule schedule;
  std::optional<Cost> objective;
};

ScheduleDocument load_schedule(std::string_view text);
std::string save_schedule(const std::string& instance_name, const Schedule& sched,
                          std::optional<Cost> objective);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace dats::core
