#include "dats/instgen/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "dats/instgen/rng.hpp"

namespace dats::instgen {

using core::Instance;
using core::ResourceScenario;
using core::Truck;

GenParams GenParams::for_horizon(int horizon) {
  GenParams p;
  p.horizon = horizon;
  p.arrival = {0, (3 * horizon) / 4};
  p.processing = {(horizon + 7) / 8, horizon / 4};
  return p;
}

void GenParams::validate() const {
  auto check = [](const IntRange& r, const char* name) {
    if (r.lo > r.hi) throw std::invalid_argument(std::string("empty range: ") + name);
  };
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (docks < 1) throw std::invalid_argument("docks must be >= 1");
  if (trucks < 1) throw std::invalid_argument("trucks must be >= 1");
  check(scenario_count, "scenario_count");
  check(arrival, "arrival");
  check(processing, "processing");
  check(setup, "setup");
  check(window_slack, "window_slack");
  check(workers, "workers");
  check(equipment, "equipment");
  check(vehicles, "vehicles");
  check(wait_cost, "wait_cost");
  if (scenario_count.lo < 1) throw std::invalid_argument("scenario_count must be >= 1");
  if (processing.lo < 1) throw std::invalid_argument("processing must be >= 1");
  if (arrival.lo < 0 || arrival.hi >= horizon) {
    throw std::invalid_argument("arrival range must lie in [0, horizon)");
  }
  if (capacity_num < 0 || capacity_den <= 0) throw std::invalid_argument("bad capacity factor");
}

namespace {

int draw(CounterRng& rng, const IntRange& r) { return static_cast<int>(rng.uniform(r.lo, r.hi)); }

// ceil(num * docks * sum / (den * count)) for nonnegative integers
int scaled_mean_ceil(long num, long docks, long sum, long den, long count) {
  const long top = num * docks * sum;
  const long bottom = den * count;
  return static_cast<int>((top + bottom - 1) / bottom);
}

}  // namespace

Generated generate_detailed(const GenParams& params) {
  params.validate();
  CounterRng rng(params.seed);
  Generated out;
  Instance& inst = out.instance;
  inst.horizon = params.horizon;
  inst.docks = params.docks;
  for (int id = 1; id <= params.trucks; ++id) {
    TruckDraws d;
    d.scenario_count = draw(rng, params.scenario_count);
    d.arrival = draw(rng, params.arrival);
    d.setup = draw(rng, params.setup);
    d.slack = draw(rng, params.window_slack);
    d.wait_cost = draw(rng, params.wait_cost);
    int shared_processing = 0;
    if (params.variant == core::Variant::kSiPT) shared_processing = draw(rng, params.processing);
    Truck t;
    t.id = id;
    t.arrival = d.arrival;
    t.setup = d.setup;
    t.wait_cost = d.wait_cost;
    t.miss_penalty = static_cast<core::Cost>(params.miss_multiplier) * d.wait_cost;
    for (int k = 0; k < d.scenario_count; ++k) {
      ResourceScenario s;
      s.processing = params.variant == core::Variant::kSiPT ? shared_processing
                                                            : draw(rng, params.processing);
      s.workers = draw(rng, params.workers);
      s.equipment = draw(rng, params.equipment);
      s.vehicles = draw(rng, params.vehicles);
      d.processing.push_back(s.processing);
      t.scenarios.push_back(s);
    }
    const int p_ref = *std::max_element(d.processing.begin(), d.processing.end());
    t.deadline = std::min(params.horizon, d.arrival + d.setup + p_ref + d.slack);
    inst.trucks.push_back(std::move(t));
    out.draws.push_back(std::move(d));
  }

  for (core::Resource r : core::kAllResources) {
    int max_min = 0;
    long sum = 0;
    long count = 0;
    for (const auto& t : inst.trucks) {
      int lowest = core::demand(t.scenarios.front(), r);
      for (const auto& s : t.scenarios) {
        lowest = std::min(lowest, core::demand(s, r));
        sum += core::demand(s, r);
        ++count;
      }
      max_min = std::max(max_min, lowest);
    }
    const int scaled = scaled_mean_ceil(params.capacity_num, params.docks, sum,
                                        params.capacity_den, count);
    const int cap = std::max(max_min, scaled);
    switch (r) {
      case core::Resource::kWorkers:
        inst.capacity.workers = cap;
        break;
      case core::Resource::kEquipment:
        inst.capacity.equipment = cap;
        break;
      case core::Resource::kVehicles:
        inst.capacity.vehicles = cap;
        break;
    }
  }
  inst.name = instance_name(params, inst.total_scenarios());
  core::validate(inst);
  return out;
}

Instance generate(const GenParams& params) { return generate_detailed(params).instance; }

std::string instance_name(const GenParams& params, std::size_t total_scenarios) {
  return "tf-" + std::to_string(params.horizon) + "-d-" + std::to_string(params.docks) + "-tr-" +
         std::to_string(params.trucks) + "-sce-" + std::to_string(total_scenarios);
}

TruckCountRule fixed_counts(int first, int last, int step) {
  if (step < 1) throw std::invalid_argument("step must be >= 1");
  return [=](int) {
    std::vector<int> out;
    for (int n = first; n <= last; n += step) out.push_back(n);
    return out;
  };
}

TruckCountRule per_dock_counts(int lo_mult, int hi_mult, int step) {
  if (step < 1) throw std::invalid_argument("step must be >= 1");
  return [=](int docks) {
    std::vector<int> out;
    for (int n = lo_mult * docks; n <= hi_mult * docks; n += step) out.push_back(n);
    return out;
  };
}

std::vector<Instance> generate_suite(const GenParams& base, const std::vector<int>& dock_values,
                                     const TruckCountRule& rule) {
  std::vector<Instance> out;
  std::uint64_t index = 0;
  for (int d : dock_values) {
    for (int n : rule(d)) {
      if (n < 3 * d || n > 200) {
        throw std::invalid_argument("truck count " + std::to_string(n) + " outside [3*d, 200] for d=" +
                                    std::to_string(d));
      }
      GenParams p = base;
      p.docks = d;
      p.trucks = n;
      p.seed = base.seed + index++;
      out.push_back(generate(p));
    }
  }
  return out;
}

}  // namespace dats::instgen
