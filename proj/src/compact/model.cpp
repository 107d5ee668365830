#include "dats/compact/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace dats::compact {

using core::Instance;
using core::Period;
using core::Truck;
using core::Variant;
using milp::Row;
using milp::Sense;
using milp::Term;

namespace {

std::uint64_t arc_key(int from, int to, Period t, int s) {
  return ((static_cast<std::uint64_t>(from) * 4096u + static_cast<std::uint64_t>(to)) * 65536u +
          static_cast<std::uint64_t>(t)) *
             1024u +
         static_cast<std::uint64_t>(s + 1);
}

const Truck& truck_at(const Instance& inst, int k) { return inst.trucks[static_cast<std::size_t>(k - 1)]; }

int processing(const Truck& t, int s) {
  return t.scenarios[static_cast<std::size_t>(s < 0 ? 0 : s)].processing;
}

int min_processing(const Truck& t) {
  int p = t.scenarios.front().processing;
  for (const auto& s : t.scenarios) p = std::min(p, s.processing);
  return p;
}

std::string id_of(const Instance& inst, int k) { return k == kDummy ? "0" : std::to_string(truck_at(inst, k).id); }

std::string scen_label(int s) { return s < 0 ? "d" : std::to_string(s); }

}  // namespace

VarIndex::VarIndex(int trucks, Period horizon)
    : trucks_(trucks),
      horizon_(horizon),
      into_(static_cast<std::size_t>(trucks) + 1),
      out_(static_cast<std::size_t>(trucks) + 1),
      eta_(static_cast<std::size_t>(trucks)),
      z_(static_cast<std::size_t>(trucks), -1) {}

std::optional<int> VarIndex::x(int from, int to, Period t, int s) const {
  const auto it = arc_map_.find(arc_key(from, to, t, s));
  if (it == arc_map_.end()) return std::nullopt;
  return arcs_[static_cast<std::size_t>(it->second)].var;
}

std::optional<int> VarIndex::y(int truck, Period t, int s) const {
  const auto it = y_map_.find(arc_key(truck, 0, t, s));
  if (it == y_map_.end()) return std::nullopt;
  return ys_[static_cast<std::size_t>(it->second)].var;
}

void VarIndex::add_arc(const Arc& a) {
  const int pos = static_cast<int>(arcs_.size());
  arc_map_.emplace(arc_key(a.from, a.to, a.t, a.s), pos);
  arcs_.push_back(a);
  into_[static_cast<std::size_t>(a.to)].push_back(pos);
  out_[static_cast<std::size_t>(a.from)].push_back(pos);
}

void VarIndex::add_y(const YVar& y) {
  y_map_.emplace(arc_key(y.truck, 0, y.t, y.s), static_cast<int>(ys_.size()));
  ys_.push_back(y);
}

int fixing_rule(const Instance& inst, Variant variant, int from, int to, Period t, int s) {
  if (to == kDummy) {
    if (from == kDummy) return 0;
    const Truck& ti = truck_at(inst, from);
    return t < ti.arrival + ti.setup + min_processing(ti) ? 3 : 0;
  }
  const Truck& tj = truck_at(inst, to);
  const int pj = processing(tj, variant == Variant::kSiPT ? 0 : s);
  if (t > tj.deadline) return 1;
  if (t < tj.arrival) return 2;
  if (from != kDummy) {
    const Truck& ti = truck_at(inst, from);
    if (t < ti.arrival + ti.setup + min_processing(ti)) return 3;
  }
  if (t + tj.setup + pj > tj.deadline) return 4;
  if (from == kDummy && t + pj + tj.setup > inst.horizon) return 5;
  return 0;
}

namespace {

void count_rule(FixingReport& rep, int rule) {
  switch (rule) {
    case 1:
      ++rep.case1;
      break;
    case 2:
      ++rep.case2;
      break;
    case 3:
      ++rep.case3;
      break;
    case 4:
      ++rep.case4;
      break;
    case 5:
      ++rep.case5;
      break;
    default:
      break;
  }
}

class Builder {
 public:
  Builder(BuildResult& out, const BuildOptions& opts) : out_(out), opts_(opts), inst_(out.instance) {}

  void run() {
    const int n = static_cast<int>(inst_.trucks.size());
    out_.index = VarIndex(n, inst_.horizon);
    variables();
    rows();
  }

 private:
  bool sipt() const { return out_.variant == Variant::kSiPT; }
  milp::ModelIR& model() { return out_.model; }
  VarIndex& index() { return out_.index; }
  const VarIndex& index() const { return out_.index; }

  void add_arc_var(int from, int to, Period t, int s) {
    double cost = 0.0;
    if (to != kDummy) {
      const Truck& tj = truck_at(inst_, to);
      cost = static_cast<double>(tj.wait_cost) * (t - tj.arrival);
    }
    const std::string name =
        "x_" + id_of(inst_, from) + "_" + id_of(inst_, to) + "_" + std::to_string(t) + "_" + scen_label(s);
    const int var = model().add_variable(name, 0, 1, cost, true);
    index().add_arc({from, to, t, s, var});
  }

  void variables() {
    const int n = static_cast<int>(inst_.trucks.size());
    const Period horizon = inst_.horizon;
    FixingReport& rep = out_.fixing;
    for (int j = 1; j <= n; ++j) {
      const Truck& tj = truck_at(inst_, j);
      const int scen = sipt() ? 1 : static_cast<int>(tj.scenarios.size());
      for (int i = 0; i <= n; ++i) {
        if (i == j) continue;
        for (int sk = 0; sk < scen; ++sk) {
          const int s = sipt() ? kNoScenario : sk;
          for (Period t = 0; t <= horizon; ++t) {
            const int rule = fixing_rule(inst_, out_.variant, i, j, t, s);
            if (opts_.fixing) {
              if (rule != 0) {
                count_rule(rep, rule);
                continue;
              }
            } else {
              const int p = processing(tj, s);
              if (t < tj.arrival || t + tj.setup + p > tj.deadline) continue;
            }
            add_arc_var(i, j, t, s);
          }
        }
      }
    }
    for (int i = 1; i <= n; ++i) {
      const Truck& ti = truck_at(inst_, i);
      std::vector<int> slots{kNoScenario};
      if (!sipt()) {
        for (int s = 0; s < static_cast<int>(ti.scenarios.size()); ++s) slots.push_back(s);
      }
      for (int s : slots) {
        for (Period t = 0; t <= horizon; ++t) {
          if (opts_.fixing) {
            if (s != kNoScenario) {
              ++rep.dummy_copies;
              continue;
            }
            const int rule = fixing_rule(inst_, out_.variant, i, kDummy, t, s);
            if (rule != 0) {
              count_rule(rep, rule);
              continue;
            }
          }
          add_arc_var(i, kDummy, t, s);
        }
      }
    }
    index().set_x000(model().add_variable("x_0_0", 0, inst_.docks, 0, true));
    for (int j = 1; j <= n; ++j) {
      const Truck& tj = truck_at(inst_, j);
      std::vector<int> etas;
      for (int s = 0; s < static_cast<int>(tj.scenarios.size()); ++s) {
        etas.push_back(model().add_variable("eta_" + id_of(inst_, j) + "_" + std::to_string(s), 0, 1, 0, true));
      }
      // branch on service first, then on the scenario choice
      for (int e : etas) model().vars[static_cast<std::size_t>(e)].priority = 1;
      index().set_eta(j, std::move(etas));
      const int z = model().add_variable("z_" + id_of(inst_, j), 0, 1, static_cast<double>(tj.miss_penalty), true);
      model().vars[static_cast<std::size_t>(z)].priority = 2;
      index().set_z(j, z);
      for (int s = 0; s < static_cast<int>(tj.scenarios.size()); ++s) {
        for (Period t = 0; t <= horizon; ++t) {
          if (opts_.fixing && (t <= tj.arrival + tj.setup || t > tj.deadline)) {
            ++rep.y_window;
            continue;
          }
          const int var = model().add_variable(
              "y_" + id_of(inst_, j) + "_" + std::to_string(t) + "_" + std::to_string(s), 0, 1, 0, false);
          index().add_y({j, t, s, var});
        }
      }
    }
  }

  void add(std::vector<Term> terms, Sense sense, double rhs, std::string name) {
    model().add_row(Row{std::move(terms), sense, rhs, std::move(name)});
  }

  // finish period of the truck entered by arc a (a.to must be real)
  Period finish(const Arc& a) const {
    const Truck& tj = truck_at(inst_, a.to);
    return a.t + tj.setup + processing(tj, a.s);
  }

  void rows() {
    const int n = static_cast<int>(inst_.trucks.size());
    const VarIndex& ix = index();
    const auto& arcs = ix.arcs();
    const double docks = inst_.docks;

    std::vector<Term> out0;
    for (int a : ix.out_of(kDummy)) out0.push_back({arcs[static_cast<std::size_t>(a)].var, 1});
    out0.push_back({ix.x000(), 1});
    add(std::move(out0), Sense::kEq, docks, "docks_out");
    std::vector<Term> in0;
    for (int a : ix.into(kDummy)) in0.push_back({arcs[static_cast<std::size_t>(a)].var, 1});
    in0.push_back({ix.x000(), 1});
    add(std::move(in0), Sense::kEq, docks, "docks_in");

    for (int j = 1; j <= n; ++j) {
      const Truck& tj = truck_at(inst_, j);
      const std::string tag = id_of(inst_, j);
      const int scen = static_cast<int>(tj.scenarios.size());

      // in-degree
      if (sipt()) {
        std::vector<Term> terms;
        for (int a : ix.into(j)) terms.push_back({arcs[static_cast<std::size_t>(a)].var, 1});
        for (int s = 0; s < scen; ++s) terms.push_back({ix.eta(j, s), -1});
        add(std::move(terms), Sense::kEq, 0, "in_" + tag);
      } else {
        for (int s = 0; s < scen; ++s) {
          std::vector<Term> terms;
          for (int a : ix.into(j)) {
            if (arcs[static_cast<std::size_t>(a)].s == s) terms.push_back({arcs[static_cast<std::size_t>(a)].var, 1});
          }
          terms.push_back({ix.eta(j, s), -1});
          add(std::move(terms), Sense::kEq, 0, "in_" + tag + "_" + std::to_string(s));
        }
      }
      // out-degree
      {
        std::vector<Term> terms;
        for (int a : ix.out_of(j)) terms.push_back({arcs[static_cast<std::size_t>(a)].var, 1});
        for (int s = 0; s < scen; ++s) terms.push_back({ix.eta(j, s), -1});
        add(std::move(terms), Sense::kEq, 0, "out_" + tag);
      }
      // one scenario or missed
      {
        std::vector<Term> terms;
        for (int s = 0; s < scen; ++s) terms.push_back({ix.eta(j, s), 1});
        terms.push_back({ix.z(j), 1});
        add(std::move(terms), Sense::kEq, 1, "serve_" + tag);
      }
      sequencing(j);
      linking(j);
    }
    resources();
    if (opts_.occupancy) occupancy();
  }

  void sequencing(int j) {
    const VarIndex& ix = index();
    const auto& arcs = ix.arcs();
    const std::string tag = id_of(inst_, j);
    if (opts_.literal) {
      for (int a : ix.into(j)) {
        const Arc& in = arcs[static_cast<std::size_t>(a)];
        const Period f = finish(in);
        std::vector<Term> terms{{in.var, 1}};
        for (int b : ix.out_of(j)) {
          const Arc& out = arcs[static_cast<std::size_t>(b)];
          const Period rl = out.to == kDummy ? 0 : truck_at(inst_, out.to).arrival;
          if (out.t >= std::max(rl, f)) terms.push_back({out.var, -1});
        }
        add(std::move(terms), Sense::kLe, 0,
            "seq_" + id_of(inst_, in.from) + "_" + tag + "_" + std::to_string(in.t) + "_" + scen_label(in.s));
      }
      return;
    }
    std::set<Period> finishes;
    for (int a : ix.into(j)) finishes.insert(finish(arcs[static_cast<std::size_t>(a)]));
    for (Period tau : finishes) {
      std::vector<Term> terms;
      for (int a : ix.into(j)) {
        if (finish(arcs[static_cast<std::size_t>(a)]) >= tau) terms.push_back({arcs[static_cast<std::size_t>(a)].var, 1});
      }
      for (int b : ix.out_of(j)) {
        if (arcs[static_cast<std::size_t>(b)].t >= tau) terms.push_back({arcs[static_cast<std::size_t>(b)].var, -1});
      }
      add(std::move(terms), Sense::kLe, 0, "seq_" + tag + "_" + std::to_string(tau));
    }
  }

  // arcs into j whose processing window covers period tp under scenario s (s = -1: any)
  void covering(int j, Period tp, int s, Period start_only, std::vector<Term>& terms) const {
    const VarIndex& ix = index();
    const Truck& tj = truck_at(inst_, j);
    const int p = processing(tj, s);
    for (int a : ix.into(j)) {
      const Arc& in = ix.arcs()[static_cast<std::size_t>(a)];
      if (!sipt() && in.s != s) continue;
      if (start_only >= 0 && in.t != start_only) continue;
      if (in.t + tj.setup + 1 <= tp && tp <= in.t + tj.setup + p) terms.push_back({in.var, 1});
    }
  }

  void linking(int j) {
    const VarIndex& ix = index();
    const Truck& tj = truck_at(inst_, j);
    const std::string tag = id_of(inst_, j);
    const Period horizon = inst_.horizon;
    for (int s = 0; s < static_cast<int>(tj.scenarios.size()); ++s) {
      const std::string ts = tag + "_" + std::to_string(s);
      std::vector<Term> sum;
      for (Period t = 0; t <= horizon; ++t) {
        const auto yv = ix.y(j, t, s);
        if (!yv) continue;
        sum.push_back({*yv, 1});
        add({{*yv, 1}, {ix.eta(j, s), -1}}, Sense::kLe, 0, "yeta_" + ts + "_" + std::to_string(t));
      }
      sum.push_back({ix.eta(j, s), -static_cast<double>(tj.scenarios[static_cast<std::size_t>(s)].processing)});
      add(std::move(sum), Sense::kEq, 0, "ysum_" + ts);

      if (opts_.literal) {
        std::set<Period> starts;
        for (int a : ix.into(j)) {
          const Arc& in = ix.arcs()[static_cast<std::size_t>(a)];
          if (sipt() || in.s == s) starts.insert(in.t);
        }
        for (Period st : starts) {
          for (Period tp = 0; tp <= horizon; ++tp) {
            std::vector<Term> terms;
            covering(j, tp, sipt() ? kNoScenario : s, st, terms);
            if (terms.empty()) continue;
            emit_link(j, s, tp, std::move(terms), ts + "_" + std::to_string(st) + "_" + std::to_string(tp));
          }
        }
        continue;
      }
      for (Period tp = 0; tp <= horizon; ++tp) {
        std::vector<Term> terms;
        covering(j, tp, sipt() ? kNoScenario : s, -1, terms);
        if (terms.empty()) continue;
        emit_link(j, s, tp, std::move(terms), ts + "_" + std::to_string(tp));
      }
    }
  }

  void emit_link(int j, int s, Period tp, std::vector<Term> terms, const std::string& name) {
    const VarIndex& ix = index();
    const auto yv = ix.y(j, tp, s);
    if (!yv) throw std::logic_error("y variable missing for a covered period");
    terms.push_back({*yv, -1});
    if (sipt()) {
      terms.push_back({ix.eta(j, s), 1});
      add(std::move(terms), Sense::kLe, 1, "link_" + name);
    } else {
      add(std::move(terms), Sense::kLe, 0, "link_" + name);
    }
  }

  void resources() {
    const VarIndex& ix = index();
    const Period horizon = inst_.horizon;
    std::vector<std::array<std::vector<Term>, 3>> per(static_cast<std::size_t>(horizon) + 1);
    for (const YVar& y : ix.ys()) {
      const auto& sc = truck_at(inst_, y.truck).scenarios[static_cast<std::size_t>(y.s)];
      int r = 0;
      for (core::Resource res : core::kAllResources) {
        const int dem = core::demand(sc, res);
        if (dem > 0) per[static_cast<std::size_t>(y.t)][static_cast<std::size_t>(r)].push_back({y.var, static_cast<double>(dem)});
        ++r;
      }
    }
    for (Period t = 0; t <= horizon; ++t) {
      int r = 0;
      for (core::Resource res : core::kAllResources) {
        auto& terms = per[static_cast<std::size_t>(t)][static_cast<std::size_t>(r)];
        if (!terms.empty()) {
          add(std::move(terms), Sense::kLe, inst_.capacity.of(res),
              std::string("res_") + core::resource_name(res) + "_" + std::to_string(t));
        }
        ++r;
      }
    }
  }

  void occupancy() {
    const VarIndex& ix = index();
    const Period horizon = inst_.horizon;
    for (Period tau = 0; tau <= horizon; ++tau) {
      std::vector<Term> terms;
      for (const Arc& a : ix.arcs()) {
        if (a.to == kDummy) continue;
        if (a.t <= tau && tau < finish(a)) terms.push_back({a.var, 1});
      }
      if (static_cast<int>(terms.size()) <= inst_.docks) continue;
      add(std::move(terms), Sense::kLe, inst_.docks, "occ_" + std::to_string(tau));
    }
  }

  BuildResult& out_;
  const BuildOptions& opts_;
  const Instance& inst_;
};

}  // namespace

BuildResult build(const Instance& inst, Variant variant, const BuildOptions& opts) {
  core::validate(inst);
  if (variant == Variant::kSiPT && !inst.scenario_invariant()) {
    throw std::invalid_argument("SiPT needs equal processing times across each truck's scenarios");
  }
  BuildResult out;
  out.variant = variant;
  if (opts.prune) {
    auto pr = core::prune_dominated_scenarios(inst);
    out.instance = std::move(pr.instance);
    out.prune = std::move(pr.report);
  } else {
    out.instance = inst;
    for (const auto& t : inst.trucks) {
      std::vector<int> all;
      for (int s = 0; s < static_cast<int>(t.scenarios.size()); ++s) all.push_back(s);
      out.prune.kept.push_back(std::move(all));
    }
  }
  Builder(out, opts).run();
  if (opts.symmetry) add_symmetry(out);
  return out;
}

int add_symmetry(BuildResult& built) {
  const Instance& inst = built.instance;
  const VarIndex& ix = built.index;
  const auto& arcs = ix.arcs();
  int added = 0;
  for (int a : ix.into(kDummy)) {
    const Arc& end = arcs[static_cast<std::size_t>(a)];
    const Truck& ti = truck_at(inst, end.from);
    std::vector<Term> terms{{end.var, 1}};
    for (int b : ix.into(end.from)) {
      const Arc& in = arcs[static_cast<std::size_t>(b)];
      if (end.s != kNoScenario && in.s != end.s) continue;
      if (in.t + ti.setup + processing(ti, in.s) == end.t) terms.push_back({in.var, -1});
    }
    if (terms.size() == 1) {
      built.model.vars[static_cast<std::size_t>(end.var)].ub = 0;
      continue;
    }
    built.model.add_row(Row{std::move(terms), Sense::kLe, 0,
                            "sym_" + id_of(inst, end.from) + "_" + std::to_string(end.t) + "_" + scen_label(end.s)});
    ++added;
  }
  built.symmetry_rows += added;
  return added;
}

std::vector<Row> separate_combinatorial(const BuildResult& built, const std::vector<double>& values, Period t) {
  const Instance& inst = built.instance;
  const VarIndex& ix = built.index;
  std::vector<Row> cuts;
  for (core::Resource res : core::kAllResources) {
    struct Pick {
      int truck;
      int s;
      double y;
    };
    std::vector<Pick> picks;
    for (int j = 1; j <= ix.trucks(); ++j) {
      const Truck& tj = truck_at(inst, j);
      Pick best{j, -1, -1.0};
      for (int s = 0; s < static_cast<int>(tj.scenarios.size()); ++s) {
        const auto yv = ix.y(j, t, s);
        if (!yv) continue;
        const double v = values[static_cast<std::size_t>(*yv)];
        if (v > best.y) best = {j, s, v};
      }
      if (best.s >= 0) picks.push_back(best);
    }
    std::stable_sort(picks.begin(), picks.end(), [](const Pick& a, const Pick& b) { return a.y > b.y; });
    long used = 0;
    double ysum = 0.0;
    std::size_t size = 0;
    bool over = false;
    for (const Pick& p : picks) {
      used += core::demand(truck_at(inst, p.truck).scenarios[static_cast<std::size_t>(p.s)], res);
      ysum += p.y;
      ++size;
      if (used > inst.capacity.of(res)) {
        over = true;
        break;
      }
    }
    if (!over || ysum <= static_cast<double>(size) - 1.0 + 1e-6) continue;
    Row cut;
    cut.sense = Sense::kLe;
    cut.rhs = static_cast<double>(size) - 1.0;
    cut.name = std::string("comb_") + core::resource_name(res) + "_" + std::to_string(t);
    for (std::size_t k = 0; k < size; ++k) {
      const Truck& tj = truck_at(inst, picks[k].truck);
      const int chosen = core::demand(tj.scenarios[static_cast<std::size_t>(picks[k].s)], res);
      for (int s = 0; s < static_cast<int>(tj.scenarios.size()); ++s) {
        if (core::demand(tj.scenarios[static_cast<std::size_t>(s)], res) < chosen) continue;
        if (const auto yv = ix.y(picks[k].truck, t, s)) cut.terms.push_back({*yv, 1});
      }
    }
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

std::vector<Row> separate_combinatorial(const BuildResult& built, const std::vector<double>& values) {
  std::vector<Row> all;
  for (Period t = 0; t <= built.instance.horizon; ++t) {
    auto cuts = separate_combinatorial(built, values, t);
    for (auto& c : cuts) all.push_back(std::move(c));
  }
  return all;
}

core::Schedule decode(const BuildResult& built, const std::vector<double>& values) {
  const Instance& inst = built.instance;
  const VarIndex& ix = built.index;
  const auto& arcs = ix.arcs();
  const int n = ix.trucks();
  auto on = [&](const Arc& a) { return values[static_cast<std::size_t>(a.var)] > 0.5; };

  std::vector<int> next(static_cast<std::size_t>(n) + 1, -1);  // arc leaving each real truck
  for (int i = 1; i <= n; ++i) {
    for (int a : ix.out_of(i)) {
      if (!on(arcs[static_cast<std::size_t>(a)])) continue;
      if (next[static_cast<std::size_t>(i)] >= 0) throw std::logic_error("decode: truck with two successors");
      next[static_cast<std::size_t>(i)] = a;
    }
  }
  core::Schedule sched;
  sched.per_dock.assign(static_cast<std::size_t>(inst.docks), {});
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::size_t dock = 0;
  for (int a : ix.out_of(kDummy)) {
    if (!on(arcs[static_cast<std::size_t>(a)])) continue;
    if (dock >= sched.per_dock.size()) throw std::logic_error("decode: more chains than docks");
    int cur = a;
    for (;;) {
      const Arc& arc = arcs[static_cast<std::size_t>(cur)];
      if (arc.to == kDummy) break;
      if (seen[static_cast<std::size_t>(arc.to)]) throw std::logic_error("decode: truck visited twice");
      seen[static_cast<std::size_t>(arc.to)] = 1;
      int s = arc.s;
      if (s == kNoScenario) {
        const Truck& tj = truck_at(inst, arc.to);
        for (int k = 0; k < static_cast<int>(tj.scenarios.size()); ++k) {
          if (values[static_cast<std::size_t>(ix.eta(arc.to, k))] > 0.5) s = k;
        }
        if (s == kNoScenario) throw std::logic_error("decode: served truck without a scenario");
      }
      sched.per_dock[dock].push_back({truck_at(inst, arc.to).id, s, arc.t});
      cur = next[static_cast<std::size_t>(arc.to)];
      if (cur < 0) throw std::logic_error("decode: chain breaks after truck " + id_of(inst, arc.to));
    }
    ++dock;
  }
  for (int j = 1; j <= n; ++j) {
    if (seen[static_cast<std::size_t>(j)]) continue;
    if (next[static_cast<std::size_t>(j)] >= 0) throw std::logic_error("decode: arc out of an unserved truck");
    sched.unserved.insert(truck_at(inst, j).id);
  }
  return sched;
}

std::optional<std::vector<double>> encode(const BuildResult& built, const core::Schedule& sched) {
  const Instance& inst = built.instance;
  const VarIndex& ix = built.index;
  const bool sipt = built.variant == Variant::kSiPT;
  std::vector<double> x(built.model.vars.size(), 0.0);
  std::map<core::TruckId, int> pos;
  for (int k = 1; k <= ix.trucks(); ++k) pos[truck_at(inst, k).id] = k;
  auto set_arc = [&](int from, int to, Period t, int s) {
    const auto v = ix.x(from, to, t, sipt ? kNoScenario : s);
    if (!v) return false;
    x[static_cast<std::size_t>(*v)] = 1.0;
    return true;
  };
  int open = 0;
  for (const auto& dock : sched.per_dock) {
    if (dock.empty()) continue;
    ++open;
    int prev = kDummy;
    Period prev_finish = 0;
    for (const auto& a : dock) {
      const auto it = pos.find(a.truck);
      if (it == pos.end()) return std::nullopt;
      const int j = it->second;
      const Truck& tj = truck_at(inst, j);
      if (a.scenario < 0 || a.scenario >= static_cast<int>(tj.scenarios.size())) return std::nullopt;
      if (!set_arc(prev, j, a.start, a.scenario)) return std::nullopt;
      x[static_cast<std::size_t>(ix.eta(j, a.scenario))] = 1.0;
      const int p = tj.scenarios[static_cast<std::size_t>(a.scenario)].processing;
      for (Period t = a.start + tj.setup + 1; t <= a.start + tj.setup + p; ++t) {
        const auto yv = ix.y(j, t, a.scenario);
        if (!yv) return std::nullopt;
        x[static_cast<std::size_t>(*yv)] = 1.0;
      }
      prev = j;
      prev_finish = a.start + tj.setup + p;
    }
    if (!set_arc(prev, kDummy, prev_finish, kNoScenario)) return std::nullopt;
  }
  for (core::TruckId id : sched.unserved) {
    const auto it = pos.find(id);
    if (it == pos.end()) return std::nullopt;
    x[static_cast<std::size_t>(ix.z(it->second))] = 1.0;
  }
  x[static_cast<std::size_t>(ix.x000())] = inst.docks - open;
  return x;
}

}  // namespace dats::compact
