#include "dats/instgen/suite.hpp"

#include <stdexcept>

#include "dats/core/types.hpp"
#include "json.hpp"

namespace dats::instgen {

namespace {

using nlohmann::json;

IntRange range_of(const json& j, const char* key) {
  const json& r = j.at(key);
  if (!r.is_array() || r.size() != 2) throw std::invalid_argument(std::string("suite: ") + key + " must be [lo, hi]");
  IntRange out{r[0].get<int>(), r[1].get<int>()};
  if (out.lo > out.hi) throw std::invalid_argument(std::string("suite: empty range ") + key);
  return out;
}

core::Variant variant_of(const std::string& s) {
  if (s == "sdpt") return core::Variant::kSdPT;
  if (s == "sipt") return core::Variant::kSiPT;
  throw std::invalid_argument("suite: unknown variant " + s);
}

void from_blocks(const json& entry, SuiteSpec& spec) {
  const GenParams base = GenParams::for_horizon(entry.at("horizon").get<int>());
  std::uint64_t index = 0;
  for (const json& b : entry.at("blocks")) {
    const int d = b.at("docks").get<int>();
    const json& t = b.at("trucks");
    const int step = t.value("step", 1);
    if (step < 1) throw std::invalid_argument("suite: step must be positive");
    TruckCountRule rule = t.contains("first")
                              ? fixed_counts(t.at("first").get<int>(), t.at("last").get<int>(), step)
                              : per_dock_counts(t.at("per_dock_min").get<int>(), t.at("per_dock_max").get<int>(), step);
    for (int n : rule(d)) {
      if (n < 3 * d || n > 200) throw std::invalid_argument("suite: truck count outside [3*d, 200]");
      GenParams p = base;
      p.docks = d;
      p.trucks = n;
      p.seed = spec.seed + index++;
      spec.params.push_back(p);
    }
  }
}

void from_draws(const json& d, SuiteSpec& spec) {
  const int count = d.at("count").get<int>();
  if (count < 0) throw std::invalid_argument("suite: negative count");
  const IntRange horizon = range_of(d, "horizon");
  const IntRange docks = range_of(d, "docks");
  const IntRange trucks = range_of(d, "trucks");
  const std::optional<IntRange> scen = d.contains("scenarios") ? std::optional(range_of(d, "scenarios")) : std::nullopt;
  std::vector<core::Variant> variants;
  for (const json& v : d.value("variants", json::array({"sdpt"}))) variants.push_back(variant_of(v.get<std::string>()));
  if (variants.empty()) throw std::invalid_argument("suite: no variants");
  const int nh = horizon.hi - horizon.lo + 1;
  const int nd = docks.hi - docks.lo + 1;
  const int nt = trucks.hi - trucks.lo + 1;
  for (int k = 0; k < count; ++k) {
    GenParams p = GenParams::for_horizon(horizon.lo + k % nh);
    p.docks = docks.lo + k % nd;
    p.trucks = trucks.lo + static_cast<int>(static_cast<long>(k) * nt / count);
    if (scen) p.scenario_count = *scen;
    p.variant = variants[static_cast<std::size_t>(k) % variants.size()];
    p.seed = spec.seed + static_cast<std::uint64_t>(k);
    p.validate();
    spec.params.push_back(p);
  }
}

}  // namespace

SuiteSpec parse_suite(std::string_view json_text, const std::string& name, std::optional<std::uint64_t> seed) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("suite file: ") + e.what());
  }
  if (!doc.contains(name)) throw std::invalid_argument("unknown suite: " + name);
  const json& entry = doc.at(name);
  SuiteSpec spec;
  spec.name = name;
  try {
    spec.seed = seed ? *seed : entry.value("seed", std::uint64_t{0});
    if (entry.contains("blocks")) {
      from_blocks(entry, spec);
    } else if (entry.contains("draws")) {
      from_draws(entry.at("draws"), spec);
    } else {
      throw std::invalid_argument("suite " + name + ": needs blocks or draws");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument("suite " + name + ": " + e.what());
  }
  return spec;
}

std::vector<std::string> suite_names(std::string_view json_text) {
  std::vector<std::string> out;
  for (const auto& [k, v] : json::parse(json_text).items()) out.push_back(k);
  return out;
}

std::vector<core::Instance> generate_suite(const SuiteSpec& spec) {
  std::vector<core::Instance> out;
  out.reserve(spec.params.size());
  for (const GenParams& p : spec.params) out.push_back(generate(p));
  return out;
}

}  // namespace dats::instgen
