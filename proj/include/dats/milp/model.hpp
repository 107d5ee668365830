#pragma once

#include <string>
#include <vector>

namespace dats::milp {

enum class Sense { kLe, kEq, kGe };

struct Variable {
  double lb = 0.0;
  double ub = 1.0;
  bool integer = false;
  double obj = 0.0;
  std::string name;
  int priority = 0;  // branching class, higher first
};

struct Term {
  int var;
  double coef;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
  std::string name;
};

/// Minimisation model with finite variable bounds.
struct ModelIR {
  std::vector<Variable> vars;
  std::vector<Row> rows;
  double obj_offset = 0.0;

  int add_variable(std::string name, double lb, double ub, double obj, bool integer);
  int add_row(Row row);
  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  /// Objective value of `x` including the offset.
  double objective(const std::vector<double>& x) const;
  /// Largest bound or row violation of `x`; integrality is not checked.
  double max_violation(const std::vector<double>& x) const;
  /// Largest distance of an integer variable from the nearest integer.
  double max_fractionality(const std::vector<double>& x) const;
  /// True when every objective coefficient is integral and only integer variables carry cost.
  bool integral_objective() const;
};

/// Throws std::invalid_argument on infinite or crossed bounds, dangling variable
/// references, non-finite coefficients or duplicate names.
void check_model(const ModelIR& model);

double row_activity(const Row& row, const std::vector<double>& x);
/// Positive amount by which `x` violates `row`, 0 when satisfied.
double row_violation(const Row& row, const std::vector<double>& x);

ModelIR add_rows(const ModelIR& model, const std::vector<Row>& rows);
/// Throws std::out_of_range on an unknown id.
ModelIR fix_variable(const ModelIR& model, int id, double value);

/// CPLEX LP text format.
std::string to_lp_format(const ModelIR& model);

}  // namespace dats::milp
