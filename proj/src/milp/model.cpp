#include "dats/milp/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dats::milp {

int ModelIR::add_variable(std::string name, double lb, double ub, double obj, bool integer) {
  Variable v;
  v.lb = lb;
  v.ub = ub;
  v.obj = obj;
  v.integer = integer;
  v.name = std::move(name);
  vars.push_back(std::move(v));
  return num_vars() - 1;
}

int ModelIR::add_row(Row row) {
  rows.push_back(std::move(row));
  return num_rows() - 1;
}

double ModelIR::objective(const std::vector<double>& x) const {
  double z = obj_offset;
  for (std::size_t j = 0; j < vars.size(); ++j) z += vars[j].obj * x[j];
  return z;
}

double row_activity(const Row& row, const std::vector<double>& x) {
  double a = 0.0;
  for (const Term& t : row.terms) a += t.coef * x[static_cast<std::size_t>(t.var)];
  return a;
}

double row_violation(const Row& row, const std::vector<double>& x) {
  const double a = row_activity(row, x);
  switch (row.sense) {
    case Sense::kLe:
      return std::max(0.0, a - row.rhs);
    case Sense::kGe:
      return std::max(0.0, row.rhs - a);
    case Sense::kEq:
      return std::abs(a - row.rhs);
  }
  return 0.0;
}

double ModelIR::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    worst = std::max({worst, vars[j].lb - x[j], x[j] - vars[j].ub});
  }
  for (const Row& r : rows) worst = std::max(worst, row_violation(r, x));
  return worst;
}

double ModelIR::max_fractionality(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].integer) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  return worst;
}

bool ModelIR::integral_objective() const {
  if (obj_offset != std::round(obj_offset)) return false;
  for (const Variable& v : vars) {
    if (v.obj == 0.0) continue;
    if (!v.integer || v.obj != std::round(v.obj)) return false;
  }
  return true;
}

void check_model(const ModelIR& model) {
  std::unordered_set<std::string> names;
  for (int j = 0; j < model.num_vars(); ++j) {
    const Variable& v = model.vars[static_cast<std::size_t>(j)];
    if (!std::isfinite(v.lb) || !std::isfinite(v.ub)) {
      throw std::invalid_argument("variable " + v.name + ": bounds must be finite");
    }
    if (v.lb > v.ub) throw std::invalid_argument("variable " + v.name + ": lb > ub");
    if (!std::isfinite(v.obj)) throw std::invalid_argument("variable " + v.name + ": bad objective");
    if (!v.name.empty() && !names.insert(v.name).second) {
      throw std::invalid_argument("duplicate name " + v.name);
    }
  }
  for (const Row& r : model.rows) {
    if (!std::isfinite(r.rhs)) throw std::invalid_argument("row " + r.name + ": bad rhs");
    for (const Term& t : r.terms) {
      if (t.var < 0 || t.var >= model.num_vars()) {
        throw std::invalid_argument("row " + r.name + ": unknown variable " + std::to_string(t.var));
      }
      if (!std::isfinite(t.coef)) throw std::invalid_argument("row " + r.name + ": bad coefficient");
    }
    if (!r.name.empty() && !names.insert(r.name).second) {
      throw std::invalid_argument("duplicate name " + r.name);
    }
  }
}

ModelIR add_rows(const ModelIR& model, const std::vector<Row>& rows) {
  ModelIR out = model;
  for (const Row& r : rows) {
    for (const Term& t : r.terms) {
      if (t.var < 0 || t.var >= model.num_vars()) {
        throw std::out_of_range("unknown variable " + std::to_string(t.var));
      }
    }
    out.rows.push_back(r);
  }
  return out;
}

ModelIR fix_variable(const ModelIR& model, int id, double value) {
  if (id < 0 || id >= model.num_vars()) throw std::out_of_range("unknown variable " + std::to_string(id));
  ModelIR out = model;
  out.vars[static_cast<std::size_t>(id)].lb = value;
  out.vars[static_cast<std::size_t>(id)].ub = value;
  return out;
}

namespace {

std::string lp_name(const std::string& name, char prefix, int index) {
  if (name.empty()) return prefix + std::to_string(index);
  return name;
}

void write_terms(std::ostringstream& os, const std::vector<std::pair<double, std::string>>& terms) {
  int on_line = 0;
  bool first = true;
  for (const auto& [coef, name] : terms) {
    if (coef == 0.0) continue;
    if (first) {
      os << (coef < 0 ? "- " : "");
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    os << std::abs(coef) << ' ' << name;
    first = false;
    if (++on_line == 8) {
      os << "\n   ";
      on_line = 0;
    }
  }
  if (first) os << "0";
}

}  // namespace

std::string to_lp_format(const ModelIR& model) {
  std::ostringstream os;
  os.precision(17);
  std::vector<std::string> names;
  for (int j = 0; j < model.num_vars(); ++j) names.push_back(lp_name(model.vars[j].name, 'v', j));

  os << "Minimize\n obj: ";
  std::vector<std::pair<double, std::string>> obj;
  for (int j = 0; j < model.num_vars(); ++j) obj.emplace_back(model.vars[j].obj, names[j]);
  write_terms(os, obj);
  if (model.obj_offset != 0.0) os << (model.obj_offset < 0 ? " - " : " + ") << std::abs(model.obj_offset);
  os << "\nSubject To\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    const Row& r = model.rows[static_cast<std::size_t>(i)];
    os << ' ' << lp_name(r.name, 'c', i) << ": ";
    std::vector<std::pair<double, std::string>> terms;
    for (const Term& t : r.terms) terms.emplace_back(t.coef, names[static_cast<std::size_t>(t.var)]);
    write_terms(os, terms);
    os << (r.sense == Sense::kLe ? " <= " : r.sense == Sense::kGe ? " >= " : " = ") << r.rhs << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const Variable& v = model.vars[static_cast<std::size_t>(j)];
    if (v.lb == v.ub) {
      os << ' ' << names[j] << " = " << v.lb << '\n';
    } else {
      os << ' ' << v.lb << " <= " << names[j] << " <= " << v.ub << '\n';
    }
  }
  bool any_int = false;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.vars[j].integer) continue;
    if (!any_int) os << "General\n";
    any_int = true;
    os << ' ' << names[j] << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace dats::milp
