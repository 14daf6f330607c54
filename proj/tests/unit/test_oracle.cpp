#include <gtest/gtest.h>

#include <tuple>

#include "naive.hpp"
#include "pgreedy/constants.hpp"

using namespace pgreedy;

namespace {

using Case = std::tuple<BuiltinSpace, double, std::size_t>;

class AgainstOracle : public ::testing::TestWithParam<Case> {};

double oracle_value(ConstantKind k, const oracle::Setup& s) {
  switch (k) {
    case ConstantKind::Cqg: return oracle::cqg(s);
    case ConstantKind::Cql: return oracle::cql(s);
    case ConstantKind::Cpg: return oracle::cpg(s);
    case ConstantKind::D: return oracle::d_functional(s);
    case ConstantKind::Delta: return oracle::delta(s);
    case ConstantKind::DeltaS: return oracle::delta_s(s);
    case ConstantKind::DeltaPl: return oracle::delta_pl(s);
    case ConstantKind::GammaU: return oracle::gamma_u(s);
    case ConstantKind::GammaT: return oracle::gamma_t(s);
    case ConstantKind::CThree: return oracle::c_three(s);
  }
  return -1;
}

}  // namespace

TEST_P(AgainstOracle, EveryConstantMatches) {
  const auto [builtin, p, n] = GetParam();
  const PSpace space = make_builtin(builtin, n, p);
  GridSpec grid;
  grid.dimension = n;
  grid.magnitudes = {0, 0.5, 1};
  grid.signs = real_signs();
  grid.max_support = n;
  const GridSearch search(space, grid);

  oracle::Setup setup;
  setup.n = static_cast<int>(n);
  setup.ladder = grid.magnitudes;
  setup.norm = [&space](const oracle::Vec& v) { return space.norm(CoeffVector::from_real(v)); };

  for (ConstantKind k : all_constant_kinds()) {
    const double expected = oracle_value(k, setup);
    const double got = search.estimate(k).value;
    EXPECT_NEAR(got, expected, 1e-12 * std::max(1.0, expected)) << symbol(k);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Builtins, AgainstOracle,
    ::testing::Combine(::testing::ValuesIn(all_builtin_spaces().begin(), all_builtin_spaces().end()),
                       ::testing::Values(1.0, 0.5), ::testing::Values(std::size_t{2}, std::size_t{3}, std::size_t{4})),
    [](const ::testing::TestParamInfo<Case>& info) {
      return std::string(builtin_name(std::get<0>(info.param))) + (std::get<1>(info.param) == 1.0 ? "_p1" : "_phalf") +
             "_dim" + std::to_string(std::get<2>(info.param));
    });

TEST(OracleSelf, GreedySetCountsWithTies) {
  EXPECT_EQ(oracle::count_greedy_sets({1, 1, 0.5}, 1), 2);
  EXPECT_EQ(oracle::count_greedy_sets({1, 1, 0.5}, 2), 1);
  EXPECT_EQ(oracle::count_greedy_sets({0, 0, 0}, 2), 3);
}
