#pragma once

#include <vector>

#include "dats/bp/master.hpp"
#include "dats/compact/model.hpp"
#include "dats/milp/model.hpp"

namespace dats::bp {

/// Compact model with the reduced-cost objective, service indicators h_j = sum_s
/// eta_js, h-linking rows, and the dock equation sum h - sum(real-real arcs) =
/// |D| - unused. Variables of the compact model keep their ids.
struct Pricing {
  milp::ModelIR model;
  std::vector<int> h;  // per truck
  int unused = -1;
};

Pricing build_pricing(const compact::BuildResult& built, const Duals& duals, const std::vector<ArcFix>& fixes = {});

/// Pricing vector of a compact vector (h and unused filled in).
std::vector<double> extend_to_pricing(const compact::BuildResult& built, const Pricing& pricing,
                                      std::vector<double> x);

/// family 1: x(i,j) + x(i,0) + x(j,0) <= 2; family 2: x(i,j) + x(0,i) + x(0,j) <= 2,
/// each term summed over periods and scenarios.
struct TriCycleCut {
  int family;
  int i;
  int j;
  double lhs;
  auto operator<=>(const TriCycleCut&) const = default;
};

/// Every violated cut (lhs > 2 + 1e-6) over ordered pairs of real trucks, ordered by
/// (family, i, j).
std::vector<TriCycleCut> separate_tricycle(const compact::BuildResult& built, const std::vector<double>& x);
milp::Row tricycle_row(const compact::BuildResult& built, const TriCycleCut& cut);

}  // namespace dats::bp
