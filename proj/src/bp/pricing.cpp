#include "dats/bp/pricing.hpp"

#include <map>
#include <string>

namespace dats::bp {

namespace {

constexpr double kCutTol = 1e-6;

// Arc positions per ordered (from, to) pair of model trucks, every period and scenario.
std::map<std::pair<int, int>, std::vector<int>> arcs_by_pair(const compact::BuildResult& built) {
  std::map<std::pair<int, int>, std::vector<int>> out;
  const auto& arcs = built.index.arcs();
  for (std::size_t p = 0; p < arcs.size(); ++p) out[{arcs[p].from, arcs[p].to}].push_back(static_cast<int>(p));
  return out;
}

double pair_sum(const compact::BuildResult& built, const std::map<std::pair<int, int>, std::vector<int>>& by_pair,
                int from, int to, const std::vector<double>& x) {
  const auto it = by_pair.find({from, to});
  if (it == by_pair.end()) return 0.0;
  double s = 0.0;
  for (int p : it->second) s += x[static_cast<std::size_t>(built.index.arcs()[static_cast<std::size_t>(p)].var)];
  return s;
}

}  // namespace

Pricing build_pricing(const compact::BuildResult& built, const Duals& duals, const std::vector<ArcFix>& fixes) {
  const core::Instance& inst = built.instance;
  const compact::VarIndex& ix = built.index;
  const int n = static_cast<int>(inst.trucks.size());
  const auto& arcs = ix.arcs();
  if (duals.v.size() != arcs.size()) throw std::invalid_argument("build_pricing: dual vector size");

  Pricing pr;
  pr.model = built.model;
  milp::ModelIR& m = pr.model;
  for (std::size_t p = 0; p < arcs.size(); ++p) m.vars[static_cast<std::size_t>(arcs[p].var)].obj += duals.v[p];
  m.obj_offset -= duals.alpha;
  for (const ArcFix& f : fixes) {
    milp::Variable& v = m.vars[static_cast<std::size_t>(f.var)];
    if (f.one) {
      v.lb = 1;
    } else {
      v.ub = 0;
    }
  }

  for (int j = 1; j <= n; ++j) {
    const std::string id = std::to_string(inst.trucks[static_cast<std::size_t>(j - 1)].id);
    const int h = m.add_variable("h_" + id, 0, 1, 0, true);
    pr.h.push_back(h);
    std::vector<milp::Term> link{{h, 1.0}};
    for (std::size_t s = 0; s < inst.trucks[static_cast<std::size_t>(j - 1)].scenarios.size(); ++s) {
      link.push_back({ix.eta(j, static_cast<int>(s)), -1.0});
    }
    m.add_row({std::move(link), milp::Sense::kEq, 0.0, "h_eta_" + id});
    std::vector<milp::Term> in{{h, -1.0}};
    for (int p : ix.into(j)) in.push_back({arcs[static_cast<std::size_t>(p)].var, 1.0});
    m.add_row({std::move(in), milp::Sense::kLe, 0.0, "h_in_" + id});
    std::vector<milp::Term> out{{h, -1.0}};
    for (int p : ix.out_of(j)) out.push_back({arcs[static_cast<std::size_t>(p)].var, 1.0});
    m.add_row({std::move(out), milp::Sense::kGe, 0.0, "h_out_" + id});
  }
  pr.unused = m.add_variable("unused_docks", 0, inst.docks, 0, true);
  std::vector<milp::Term> dock{{pr.unused, 1.0}};
  for (int h : pr.h) dock.push_back({h, 1.0});
  for (const compact::Arc& a : arcs) {
    if (a.from != compact::kDummy && a.to != compact::kDummy) dock.push_back({a.var, -1.0});
  }
  m.add_row({std::move(dock), milp::Sense::kEq, static_cast<double>(inst.docks), "docks_used"});
  return pr;
}

std::vector<double> extend_to_pricing(const compact::BuildResult& built, const Pricing& pricing,
                                      std::vector<double> x) {
  const core::Instance& inst = built.instance;
  x.resize(pricing.model.vars.size(), 0.0);
  double used = 0.0;
  for (std::size_t p = 0; p < pricing.h.size(); ++p) {
    double h = 0.0;
    for (std::size_t s = 0; s < inst.trucks[p].scenarios.size(); ++s) {
      h += x[static_cast<std::size_t>(built.index.eta(static_cast<int>(p) + 1, static_cast<int>(s)))];
    }
    x[static_cast<std::size_t>(pricing.h[p])] = h;
    used += h;
  }
  for (const compact::Arc& a : built.index.arcs()) {
    if (a.from != compact::kDummy && a.to != compact::kDummy) used -= x[static_cast<std::size_t>(a.var)];
  }
  x[static_cast<std::size_t>(pricing.unused)] = inst.docks - used;
  return x;
}

std::vector<TriCycleCut> separate_tricycle(const compact::BuildResult& built, const std::vector<double>& x) {
  const int n = static_cast<int>(built.instance.trucks.size());
  const auto by_pair = arcs_by_pair(built);
  std::vector<double> to_end(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> from_start(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    to_end[static_cast<std::size_t>(j)] = pair_sum(built, by_pair, j, compact::kDummy, x);
    from_start[static_cast<std::size_t>(j)] = pair_sum(built, by_pair, compact::kDummy, j, x);
  }
  std::vector<TriCycleCut> cuts;
  for (int family = 1; family <= 2; ++family) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const double ij = pair_sum(built, by_pair, i, j, x);
        const double lhs = family == 1 ? ij + to_end[static_cast<std::size_t>(i)] + to_end[static_cast<std::size_t>(j)]
                                       : ij + from_start[static_cast<std::size_t>(i)] +
                                             from_start[static_cast<std::size_t>(j)];
        if (lhs > 2.0 + kCutTol) cuts.push_back({family, i, j, lhs});
      }
    }
  }
  return cuts;
}

milp::Row tricycle_row(const compact::BuildResult& built, const TriCycleCut& cut) {
  milp::Row row;
  row.sense = milp::Sense::kLe;
  row.rhs = 2.0;
  row.name = "tri" + std::to_string(cut.family) + "_" + std::to_string(cut.i) + "_" + std::to_string(cut.j);
  const bool end = cut.family == 1;
  for (const compact::Arc& a : built.index.arcs()) {
    const bool ij = a.from == cut.i && a.to == cut.j;
    const bool dummy = end ? a.to == compact::kDummy && (a.from == cut.i || a.from == cut.j)
                           : a.from == compact::kDummy && (a.to == cut.i || a.to == cut.j);
    if (ij || dummy) row.terms.push_back({a.var, 1.0});
  }
  return row;
}

}  // namespace dats::bp
