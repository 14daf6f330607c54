#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgreedy/constants.hpp"
#include "pgreedy/scalar.hpp"

namespace pgreedy {

enum class Status { Pass, Fail, NotApplicable };
std::string_view to_string(Status status) noexcept;

struct InequalityRecord {
  std::string id;
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  Status status = Status::NotApplicable;
  bool closure_ok = false;
  std::map<std::string, double> inputs;  // every quantity entering lhs and rhs
};

/// Constant values for one space, as fed to the checkers.
struct EstimateTable {
  double p = 1.0;
  Field field = Field::Real;
  bool closure_ok = false;
  std::map<ConstantKind, double> values;

  std::optional<double> get(ConstantKind kind) const;
  static EstimateTable from_estimates(double p, Field field, bool closure_ok,
                                      const std::vector<ConstantEstimate>& estimates);
};

/// PASS iff lhs <= rhs + 1e-9 max(1, rhs).
Status compare(double lhs, double rhs) noexcept;

/// Largest-coefficient characterisation: five records
/// (Delta_s <= Delta_pl, two cross bounds, and both sides of the C_three sandwich).
std::vector<InequalityRecord> check_largest_coefficient_bounds(const EstimateTable& t);
/// Characterisation of partial greediness: three records.
std::vector<InequalityRecord> check_partially_greedy_chain(const EstimateTable& t);
/// D = C_pg as an equality with tolerance 1e-9 max(1, C_pg).
InequalityRecord check_remainder_equality(const EstimateTable& t);
/// Bounds for C_pg from quasi-greediness: four records, the last two being
/// the self-referential form and its variant with C_qg inside.
std::vector<InequalityRecord> check_partially_greedy_bounds(const EstimateTable& t);
/// Bounds for the truncation operators: two records.
std::vector<InequalityRecord> check_truncation_bounds(const EstimateTable& t);

/// All of the above in a fixed order.
std::vector<InequalityRecord> check_all(const EstimateTable& t);

/// Recomputes lhs and rhs of a record from its logged inputs.
std::pair<double, double> recompute_record(const InequalityRecord& record);

}  // namespace pgreedy
