#include "dats/bp/master.hpp"

#include <stdexcept>
#include <string>

namespace dats::bp {

namespace {

constexpr double kSignTol = 1e-7;

std::vector<int> arc_position_of_var(const compact::BuildResult& built) {
  std::vector<int> pos(built.model.vars.size(), -1);
  const auto& arcs = built.index.arcs();
  for (std::size_t p = 0; p < arcs.size(); ++p) pos[static_cast<std::size_t>(arcs[p].var)] = static_cast<int>(p);
  return pos;
}

int arc_var(const compact::BuildResult& built, const ArcKey& a) {
  const auto v = built.index.x(a.from, a.to, a.t, a.s);
  if (!v) throw std::logic_error("column uses an arc outside the model");
  return *v;
}

}  // namespace

Rmp build_rmp(const compact::BuildResult& built, const std::vector<PseudoSchedule>& columns,
              const std::vector<ArcFix>& fixes) {
  if (columns.empty()) throw std::invalid_argument("build_rmp: no columns");
  const core::Instance& inst = built.instance;
  const int n = static_cast<int>(inst.trucks.size());
  const auto& arcs = built.index.arcs();
  const std::vector<int> pos = arc_position_of_var(built);

  Rmp rmp;
  double m = 1.0;
  for (const core::Truck& t : inst.trucks) m += static_cast<double>(t.miss_penalty) + static_cast<double>(t.wait_cost) * inst.horizon;
  rmp.big_m = 10.0 * m;

  std::vector<std::vector<std::pair<int, double>>> uses;  // per column: compact arc vars
  for (std::size_t k = 0; k < columns.size(); ++k) {
    rmp.lambda.push_back(rmp.model.add_variable("lambda_" + std::to_string(k), 0, 1,
                                                static_cast<double>(columns[k].cost), false));
    std::vector<std::pair<int, double>> u;
    for (const ArcKey& a : columns[k].arcs) u.emplace_back(arc_var(built, a), 1.0);
    uses.push_back(std::move(u));
  }
  std::map<int, std::vector<milp::Term>> coupling;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    for (const auto& [var, c] : uses[k]) coupling[var].push_back({rmp.lambda[k], -c});
  }
  std::map<int, const ArcFix*> fix_of;
  for (const ArcFix& f : fixes) {
    fix_of[f.var] = &f;
    coupling[f.var];
  }
  for (auto& [var, terms] : coupling) {
    const compact::Arc& a = arcs[static_cast<std::size_t>(pos[static_cast<std::size_t>(var)])];
    double lb = 0;
    double ub = 1;
    const auto f = fix_of.find(var);
    if (f != fix_of.end()) {
      if (f->second->one) {
        lb = 1;
      } else {
        ub = 0;
      }
    }
    const int x = rmp.model.add_variable(built.model.vars[static_cast<std::size_t>(var)].name, lb, ub, 0, true);
    rmp.x_of_arc[var] = x;
    terms.push_back({x, 1.0});
    if (f != fix_of.end() && f->second->one) {
      const int s = rmp.model.add_variable("art_" + std::to_string(var), 0, 1, rmp.big_m, false);
      rmp.artificial.push_back(s);
      terms.push_back({s, -1.0});
    }
    (void)a;
  }

  rmp.in_row.assign(static_cast<std::size_t>(n), -1);
  rmp.out_row.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<milp::Term>> in_terms(static_cast<std::size_t>(n));
  std::vector<std::vector<milp::Term>> out_terms(static_cast<std::size_t>(n));
  for (const auto& [var, x] : rmp.x_of_arc) {
    const compact::Arc& a = arcs[static_cast<std::size_t>(pos[static_cast<std::size_t>(var)])];
    if (a.to != compact::kDummy) in_terms[static_cast<std::size_t>(a.to - 1)].push_back({x, 1.0});
    if (a.from != compact::kDummy) out_terms[static_cast<std::size_t>(a.from - 1)].push_back({x, 1.0});
  }
  for (int j = 0; j < n; ++j) {
    const std::string id = std::to_string(inst.trucks[static_cast<std::size_t>(j)].id);
    if (!in_terms[static_cast<std::size_t>(j)].empty()) {
      rmp.in_row[static_cast<std::size_t>(j)] =
          rmp.model.add_row({std::move(in_terms[static_cast<std::size_t>(j)]), milp::Sense::kLe, 1.0, "in_" + id});
    }
    if (!out_terms[static_cast<std::size_t>(j)].empty()) {
      rmp.out_row[static_cast<std::size_t>(j)] =
          rmp.model.add_row({std::move(out_terms[static_cast<std::size_t>(j)]), milp::Sense::kLe, 1.0, "out_" + id});
    }
  }
  std::vector<milp::Term> conv;
  for (int l : rmp.lambda) conv.push_back({l, 1.0});
  rmp.convexity_row = rmp.model.add_row({std::move(conv), milp::Sense::kEq, 1.0, "convexity"});
  for (auto& [var, terms] : coupling) {
    rmp.coupling_row[var] = rmp.model.add_row(
        {std::move(terms), milp::Sense::kEq, 0.0, "couple_" + built.model.vars[static_cast<std::size_t>(var)].name});
  }
  return rmp;
}

RmpLp solve_rmp_lp(const compact::BuildResult& built, const Rmp& rmp) {
  milp::LpOptions opts;
  opts.algorithm = milp::LpAlgorithm::kDual;
  RmpLp out;
  out.lp = milp::solve_lp(rmp.model, opts);
  if (out.lp.status != milp::LpStatus::kOptimal) {
    throw std::logic_error(std::string("restricted master LP not optimal: ") + milp::lp_status_name(out.lp.status));
  }
  out.objective = out.lp.objective;
  const std::size_t n = built.instance.trucks.size();
  Duals& d = out.duals;
  d.u1.assign(n, 0.0);
  d.u2.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (rmp.in_row[j] >= 0) d.u1[j] = out.lp.duals[static_cast<std::size_t>(rmp.in_row[j])];
    if (rmp.out_row[j] >= 0) d.u2[j] = out.lp.duals[static_cast<std::size_t>(rmp.out_row[j])];
    if (d.u1[j] > kSignTol || d.u2[j] > kSignTol) throw std::logic_error("degree row dual with the wrong sign");
    d.u1[j] = std::min(d.u1[j], 0.0);
    d.u2[j] = std::min(d.u2[j], 0.0);
  }
  d.alpha = out.lp.duals[static_cast<std::size_t>(rmp.convexity_row)];
  const auto& arcs = built.index.arcs();
  d.v.assign(arcs.size(), 0.0);
  for (std::size_t p = 0; p < arcs.size(); ++p) {
    const compact::Arc& a = arcs[p];
    const auto row = rmp.coupling_row.find(a.var);
    if (row != rmp.coupling_row.end()) {
      d.v[p] = out.lp.duals[static_cast<std::size_t>(row->second)];
    } else {
      double v = 0.0;
      if (a.to != compact::kDummy) v -= d.u1[static_cast<std::size_t>(a.to - 1)];
      if (a.from != compact::kDummy) v -= d.u2[static_cast<std::size_t>(a.from - 1)];
      d.v[p] = v;
    }
  }
  for (int s : rmp.artificial) {
    if (out.lp.x[static_cast<std::size_t>(s)] > 1e-7) out.artificial_used = true;
  }
  return out;
}

double reduced_cost(const compact::BuildResult& built, const Duals& duals, const PseudoSchedule& col) {
  const std::vector<int> pos = arc_position_of_var(built);
  double rc = static_cast<double>(col.cost) - duals.alpha;
  for (const ArcKey& a : col.arcs) rc += duals.v[static_cast<std::size_t>(pos[static_cast<std::size_t>(arc_var(built, a))])];
  return rc;
}

}  // namespace dats::bp
