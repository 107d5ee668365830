#include "dats/core/io.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dats::core {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

void expect_object(const json& j, const std::string& where,
                   std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ParseError(where + ": unknown key '" + key + "'");
  }
  for (const char* k : keys) {
    if (!j.contains(k)) throw ParseError(where + ": missing key '" + k + "'");
  }
}

std::int64_t get_int(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ParseError(where + "." + key + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

int get_small_int(const json& j, const char* key, const std::string& where) {
  const std::int64_t v = get_int(j, key, where);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(where + "." + key + ": out of range");
  }
  return static_cast<int>(v);
}

const json& get_array(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected an array");
  return v;
}

}  // namespace

Instance load_instance(std::string_view text) {
  const json doc = parse_json(text);
  expect_object(doc, "instance", {"name", "horizon", "docks", "capacity", "trucks"});
  Instance inst;
  if (!doc.at("name").is_string()) throw ParseError("instance.name: expected a string");
  inst.name = doc.at("name").get<std::string>();
  inst.horizon = get_small_int(doc, "horizon", "instance");
  inst.docks = get_small_int(doc, "docks", "instance");
  const json& cap = doc.at("capacity");
  expect_object(cap, "capacity", {"personnel", "equipment", "vehicles"});
  inst.capacity.workers = get_small_int(cap, "personnel", "capacity");
  inst.capacity.equipment = get_small_int(cap, "equipment", "capacity");
  inst.capacity.vehicles = get_small_int(cap, "vehicles", "capacity");
  const json& trucks = get_array(doc, "trucks", "instance");
  for (std::size_t k = 0; k < trucks.size(); ++k) {
    const std::string where = "trucks[" + std::to_string(k) + "]";
    const json& tj = trucks[k];
    expect_object(tj, where,
                  {"id", "arrival", "deadline", "setup", "wait_cost", "miss_penalty", "scenarios"});
    Truck t;
    t.id = get_small_int(tj, "id", where);
    t.arrival = get_small_int(tj, "arrival", where);
    t.deadline = get_small_int(tj, "deadline", where);
    t.setup = get_small_int(tj, "setup", where);
    t.wait_cost = get_int(tj, "wait_cost", where);
    t.miss_penalty = get_int(tj, "miss_penalty", where);
    const json& sc = get_array(tj, "scenarios", where);
    for (std::size_t q = 0; q < sc.size(); ++q) {
      const std::string sw = where + ".scenarios[" + std::to_string(q) + "]";
      expect_object(sc[q], sw, {"personnel", "equipment", "vehicles", "processing"});
      ResourceScenario s;
      s.workers = get_small_int(sc[q], "personnel", sw);
      s.equipment = get_small_int(sc[q], "equipment", sw);
      s.vehicles = get_small_int(sc[q], "vehicles", sw);
      s.processing = get_small_int(sc[q], "processing", sw);
      t.scenarios.push_back(s);
    }
    inst.trucks.push_back(std::move(t));
  }
  validate(inst);
  return inst;
}

std::string save_instance(const Instance& inst) {
  ordered_json doc;
  doc["name"] = inst.name;
  doc["horizon"] = inst.horizon;
  doc["docks"] = inst.docks;
  doc["capacity"] = ordered_json{{"personnel", inst.capacity.workers},
                                 {"equipment", inst.capacity.equipment},
                                 {"vehicles", inst.capacity.vehicles}};
  ordered_json trucks = ordered_json::array();
  for (const auto& t : inst.trucks) {
    ordered_json tj;
    tj["id"] = t.id;
    tj["arrival"] = t.arrival;
    tj["deadline"] = t.deadline;
    tj["setup"] = t.setup;
    tj["wait_cost"] = t.wait_cost;
    tj["miss_penalty"] = t.miss_penalty;
    ordered_json sc = ordered_json::array();
    for (const auto& s : t.scenarios) {
      sc.push_back(ordered_json{{"personnel", s.workers},
                                {"equipment", s.equipment},
                                {"vehicles", s.vehicles},
                                {"processing", s.processing}});
    }
    tj["scenarios"] = std::move(sc);
    trucks.push_back(std::move(tj));
  }
  doc["trucks"] = std::move(trucks);
  return doc.dump(2) + "\n";
}

ScheduleDocument load_schedule(std::string_view text) {
  const json doc = parse_json(text);
  expect_object(doc, "schedule", {"instance", "docks", "unserved", "objective"});
  ScheduleDocument out;
  if (!doc.at("instance").is_string()) throw ParseError("schedule.instance: expected a string");
  out.instance = doc.at("instance").get<std::string>();
  const json& docks = get_array(doc, "docks", "schedule");
  for (std::size_t d = 0; d < docks.size(); ++d) {
    if (!docks[d].is_array()) throw ParseError("schedule.docks[" + std::to_string(d) + "]: expected an array");
    std::vector<Assignment> chain;
    for (std::size_t k = 0; k < docks[d].size(); ++k) {
      const std::string where = "docks[" + std::to_string(d) + "][" + std::to_string(k) + "]";
      expect_object(docks[d][k], where, {"truck", "scenario", "start"});
      chain.push_back({get_small_int(docks[d][k], "truck", where),
                       get_small_int(docks[d][k], "scenario", where),
                       get_small_int(docks[d][k], "start", where)});
    }
    out.schedule.per_dock.push_back(std::move(chain));
  }
  for (const json& u : get_array(doc, "unserved", "schedule")) {
    if (!u.is_number_integer()) throw ParseError("schedule.unserved: expected integers");
    out.schedule.unserved.insert(u.get<int>());
  }
  const json& obj = doc.at("objective");
  if (obj.is_null()) {
    out.objective = std::nullopt;
  } else if (obj.is_number_integer()) {
    out.objective = obj.get<std::int64_t>();
  } else {
    throw ParseError("schedule.objective: expected an integer or null");
  }
  return out;
}

std::string save_schedule(const std::string& instance_name, const Schedule& sched,
                          std::optional<Cost> objective) {
  ordered_json doc;
  doc["instance"] = instance_name;
  ordered_json docks = ordered_json::array();
  for (const auto& chain : sched.per_dock) {
    ordered_json cj = ordered_json::array();
    for (const auto& a : chain) {
      cj.push_back(ordered_json{{"truck", a.truck}, {"scenario", a.scenario}, {"start", a.start}});
    }
    docks.push_back(std::move(cj));
  }
  doc["docks"] = std::move(docks);
  doc["unserved"] = ordered_json(std::vector<int>(sched.unserved.begin(), sched.unserved.end()));
  doc["objective"] = objective ? ordered_json(*objective) : ordered_json(nullptr);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace dats::core
