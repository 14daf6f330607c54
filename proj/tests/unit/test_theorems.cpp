#include <gtest/gtest.h>

#include <cmath>

#include "pgreedy/constants.hpp"
#include "pgreedy/errors.hpp"
#include "pgreedy/theorems.hpp"

using namespace pgreedy;

namespace {

EstimateTable all_ones(double p) {
  EstimateTable t;
  t.p = p;
  t.closure_ok = true;
  for (ConstantKind k : all_constant_kinds()) t.values[k] = 1.0;
  return t;
}

const InequalityRecord& find(const std::vector<InequalityRecord>& rs, const std::string& id) {
  for (const auto& r : rs) {
    if (r.id == id) return r;
  }
  throw std::runtime_error("missing record " + id);
}

}  // namespace

TEST(Ledger, FifteenRecordsInFixedOrder) {
  const auto rs = check_all(all_ones(1.0));
  ASSERT_EQ(rs.size(), 15u);
  EXPECT_EQ(rs.front().id, "lc.delta_s_le_delta_pl");
  EXPECT_EQ(rs.back().id, "tr.full");
  EXPECT_EQ(check_largest_coefficient_bounds(all_ones(1)).size(), 5u);
  EXPECT_EQ(check_partially_greedy_chain(all_ones(1)).size(), 3u);
  EXPECT_EQ(check_partially_greedy_bounds(all_ones(1)).size(), 4u);
  EXPECT_EQ(check_truncation_bounds(all_ones(1)).size(), 2u);
}

TEST(Ledger, AllOnesPassesForBothExponents) {
  for (double p : {1.0, 0.5, 0.25}) {
    for (const auto& r : check_all(all_ones(p))) EXPECT_EQ(r.status, Status::Pass) << r.id << " p=" << p;
  }
}

TEST(Ledger, KnownRightHandSidesAtPOne) {
  const auto rs = check_all(all_ones(1.0));
  const double eta = 3 + 2 * std::sqrt(2.0);
  EXPECT_NEAR(find(rs, "pgb.conservative").rhs, 1 + 2 * eta, 1e-8);  // 12.657
  EXPECT_NEAR(find(rs, "pgb.super_conservative").rhs, 1 + eta, 1e-8);  // 6.828
  EXPECT_NEAR(find(rs, "tr.restricted").rhs, eta, 1e-8);
  EXPECT_DOUBLE_EQ(find(rs, "pg.cqg_le_cpg").rhs, 2.0);
  EXPECT_DOUBLE_EQ(find(rs, "lc.cql_bound").rhs, 2.0);
}

TEST(Ledger, ViolationIsReported) {
  EstimateTable t = all_ones(1.0);
  t.values[ConstantKind::DeltaPl] = 4.0;
  t.values[ConstantKind::Cpg] = 2.0;
  const auto r = find(check_all(t), "pg.delta_pl_le_cpg");
  EXPECT_EQ(r.status, Status::Fail);
  EXPECT_DOUBLE_EQ(r.margin, -2.0);
  EXPECT_EQ(find(check_all(t), "pg.d_equals_cpg").status, Status::Fail);
}

TEST(Ledger, ToleranceIsRelative) {
  EXPECT_EQ(compare(1.0 + 5e-10, 1.0), Status::Pass);
  EXPECT_EQ(compare(1.0 + 2e-9, 1.0), Status::Fail);
  EXPECT_EQ(compare(1000.0 + 5e-7, 1000.0), Status::Pass);
  EXPECT_EQ(compare(1000.0 + 2e-6, 1000.0), Status::Fail);
}

TEST(Ledger, GatingMakesRecordsNotApplicable) {
  EstimateTable open = all_ones(1.0);
  open.closure_ok = false;
  for (const auto& r : check_all(open)) {
    EXPECT_EQ(r.status, Status::NotApplicable) << r.id;
    EXPECT_FALSE(r.closure_ok);
  }

  EstimateTable missing = all_ones(1.0);
  missing.values.erase(ConstantKind::Delta);
  EXPECT_EQ(find(check_all(missing), "pgb.conservative").status, Status::NotApplicable);
  EXPECT_EQ(find(check_all(missing), "pgb.super_conservative").status, Status::Pass);

  EstimateTable zero = all_ones(1.0);
  zero.values[ConstantKind::Delta] = 0.0;
  EXPECT_EQ(find(check_all(zero), "pgb.conservative").status, Status::NotApplicable);

  EstimateTable inf = all_ones(1.0);
  inf.values[ConstantKind::Cqg] = INFINITY;
  EXPECT_EQ(find(check_all(inf), "tr.full").status, Status::NotApplicable);
}

TEST(Ledger, RecordsRecomputeFromInputs) {
  EstimateTable t = all_ones(0.5);
  t.values[ConstantKind::Cqg] = 1.3;
  t.values[ConstantKind::Cpg] = 2.1;
  t.values[ConstantKind::DeltaPl] = 1.7;
  for (const auto& r : check_all(t)) {
    const auto [lhs, rhs] = recompute_record(r);
    EXPECT_EQ(lhs, r.lhs) << r.id;
    EXPECT_EQ(rhs, r.rhs) << r.id;
  }
  InequalityRecord bad = check_all(t).front();
  bad.inputs.erase("Delta_s");
  EXPECT_THROW(recompute_record(bad), InputError);
  bad.id = "no.such";
  EXPECT_THROW(recompute_record(bad), InputError);
}

TEST(Ledger, EstimatesFromCanonicalLpPassEverything) {
  for (double p : {1.0, 0.5}) {
    const GridSearch s(make_builtin(BuiltinSpace::Lp, 3, p), GridSpec::standard(3));
    std::vector<ConstantEstimate> es;
    for (ConstantKind k : all_constant_kinds()) es.push_back(s.estimate(k));
    const auto t = EstimateTable::from_estimates(p, Field::Real, s.universe().spec().closure_ok(), es);
    for (const auto& r : check_all(t)) EXPECT_EQ(r.status, Status::Pass) << r.id;
  }
}
