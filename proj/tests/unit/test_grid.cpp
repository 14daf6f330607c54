#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "pgreedy/errors.hpp"
#include "pgreedy/grid.hpp"

using namespace pgreedy;

namespace {
GridSpec small(std::size_t n, std::size_t support) {
  GridSpec g;
  g.dimension = n;
  g.magnitudes = {0, 0.5, 1};
  g.signs = real_signs();
  g.max_support = support;
  return g;
}

double binom(double n, double k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}
}  // namespace

TEST(GridSpec, StandardLadder) {
  const GridSpec g = GridSpec::standard(4);
  EXPECT_EQ(g.magnitudes, (std::vector<double>{0, 0.25, 0.5, 1, 2}));
  EXPECT_EQ(g.levels(), (std::vector<double>{0.25, 0.5, 1, 2}));
  EXPECT_TRUE(g.closure_ok());
  EXPECT_NO_THROW(g.validate());
}

TEST(GridSpec, ValidationFailures) {
  auto bad = [](auto mutate) {
    GridSpec g = GridSpec::standard(3);
    mutate(g);
    return g;
  };
  EXPECT_THROW(bad([](GridSpec& g) { g.magnitudes = {0, 0.1, 1}; }).validate(), InputError);
  EXPECT_THROW(bad([](GridSpec& g) { g.magnitudes = {0.5, 1}; }).validate(), InputError);
  EXPECT_THROW(bad([](GridSpec& g) { g.magnitudes = {0, 0.5, 2}; }).validate(), InputError);
  EXPECT_THROW(bad([](GridSpec& g) { g.magnitudes = {0, 1, 0.5}; }).validate(), InputError);
  EXPECT_THROW(bad([](GridSpec& g) { g.signs = {Scalar{-1, 0}}; }).validate(), InputError);
  EXPECT_THROW(bad([](GridSpec& g) { g.signs = {Scalar{1, 0}, Scalar{0.5, 0}}; }).validate(), InputError);
  EXPECT_THROW(bad([](GridSpec& g) { g.max_support = 0; }).validate(), InputError);
  EXPECT_THROW(bad([](GridSpec& g) { g.max_support = 4; }).validate(), InputError);
}

TEST(GridSpec, HashSeparatesSpecs) {
  GridSpec a = GridSpec::standard(3);
  GridSpec b = a;
  EXPECT_EQ(a.hash(), b.hash());
  b.max_support = 2;
  EXPECT_NE(a.hash(), b.hash());
  b = a;
  b.magnitudes.push_back(4);
  EXPECT_NE(a.hash(), b.hash());
}

TEST(GridUniverse, SizeMatchesCount) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t s = 1; s <= n; ++s) {
      const GridUniverse u(small(n, s));
      double expected = 0;
      for (std::size_t k = 0; k <= s; ++k) expected += binom(n, k) * std::pow(4.0, k);
      EXPECT_EQ(u.size(), static_cast<std::size_t>(expected)) << n << " " << s;
      for (const CoeffVector& f : u.vectors()) EXPECT_LE(f.support_size(), s);
    }
  }
}

TEST(GridUniverse, VectorsAreDistinct) {
  const GridUniverse u(small(3, 3));
  std::vector<CoeffVector> v = u.vectors();
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
  EXPECT_EQ(std::adjacent_find(v.begin(), v.end()), v.end());
}

TEST(GridUniverse, DimensionCap) {
  EXPECT_THROW(GridUniverse(small(4, 1), 3), SizeError);
  EXPECT_NO_THROW(GridUniverse(small(4, 1), 4));
}

TEST(GridUniverse, AugmentationClosesUnderIndicatorSums) {
  GridSpec g = small(3, 1);
  EXPECT_FALSE(g.closure_ok());
  g.indicator_augmented = true;
  EXPECT_TRUE(g.closure_ok());
  const GridUniverse u(g);
  const auto& vs = u.vectors();
  auto contains = [&](const CoeffVector& x) { return std::find(vs.begin(), vs.end(), x) != vs.end(); };
  EXPECT_TRUE(contains(CoeffVector(3, {0.5, -1, 1})));
  EXPECT_TRUE(contains(CoeffVector(3, {0.5, 0.5, -0.5})));
  EXPECT_FALSE(contains(CoeffVector(3, {1, 0.5, 0.5})));  // two levels above one coefficient
}

TEST(Subsets, OrderedBySizeThenLexicographic) {
  const auto s = subsets_of({1, 3, 4}, 2);
  const std::vector<IndexSet> expected{{}, {1}, {3}, {4}, {1, 3}, {1, 4}, {3, 4}};
  EXPECT_EQ(s, expected);
}

TEST(SignPatterns, EnumeratesAllAssignments) {
  std::vector<std::vector<Scalar>> seen;
  for_each_sign_pattern(real_signs(), 2, [&](const std::vector<Scalar>& p) {
    seen.push_back(p);
    return true;
  });
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen.front(), (std::vector<Scalar>{1, 1}));
  EXPECT_EQ(seen.back(), (std::vector<Scalar>{-1, -1}));
  int empty = 0;
  for_each_sign_pattern(real_signs(), 0, [&](const std::vector<Scalar>&) {
    ++empty;
    return true;
  });
  EXPECT_EQ(empty, 1);
}
