#include <gtest/gtest.h>

#include <random>

#include "oracles/dtw_oracle.hpp"
#include "support/cases.hpp"
#include "vqsearch/similarity.hpp"

using namespace vqsearch;

namespace {

Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST(Dtw, MatchesExhaustiveAlignments) {
  std::mt19937 rng(99);
  for (int k = 0; k < 50; ++k) {
    const auto a = cases::random_series(rng, 1, 6);
    const auto b = cases::random_series(rng, 1, 6);
    EXPECT_EQ(dtw(vec(a), vec(b)), oracle::dtw_paths(a, b));
    const double s = dtw_similarity(vec(a), vec(b));
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Dtw, Basics) {
  EXPECT_EQ(dtw(vec({1, 2, 3}), vec({1, 2, 3})), 0.0);
  EXPECT_EQ(dtw_similarity(vec({1, 2, 3}), vec({1, 2, 3})), 1.0);
  EXPECT_EQ(dtw(vec({0, 0, 1}), vec({0, 1})), 0.0);
  EXPECT_EQ(dtw(vec({0}), vec({1, 2})), 3.0);
  EXPECT_THROW(dtw(vec({}), vec({1})), std::invalid_argument);
}

TEST(Pearson, Basics) {
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto f = vec(cases::random_series(rng, 2, 30));
    if ((f.array() == f[0]).all()) continue;
    EXPECT_NEAR(pearson(f, f), 1.0, 1e-12);
    EXPECT_NEAR(pearson(f, -f), -1.0, 1e-12);
    EXPECT_NEAR(pearson(f, ((3.0 * f).array() + 2.0).matrix()), 1.0, 1e-12);
  }
  EXPECT_THROW(pearson(vec({1, 2}), vec({1, 2, 3})), std::invalid_argument);
  EXPECT_THROW(pearson(vec({1}), vec({1})), std::invalid_argument);
  EXPECT_THROW(pearson(vec({1, 1}), vec({1, 2})), std::invalid_argument);
}
