#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles/finding_oracle.hpp"
#include "support/cases.hpp"
#include "vqsearch/converters.hpp"
#include "vqsearch/finding.hpp"

using namespace vqsearch;

namespace {

Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

const ConverterConfig kCfg;

}  // namespace

TEST(Trend, Examples) {
  EXPECT_EQ(detect_trend(vec({1, 2, 3, 4, 5, 6}), kCfg), Trend::ascending);
  EXPECT_EQ(detect_trend(vec({5, 5, 5, 5}), kCfg), Trend::neutral);
  EXPECT_EQ(detect_trend(vec({1, 2, 3, 3, 2, 1}), kCfg), Trend::neutral);
  EXPECT_EQ(detect_trend(vec({4}), kCfg), Trend::neutral);
  EXPECT_EQ(detect_trend(vec({4, 1}), kCfg), Trend::neutral);
  EXPECT_EQ(detect_trend(vec({5, 4, 3, 2, 1}), kCfg), Trend::descending);
}

TEST(Trend, ReverseOfMonotoneFlips) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> step(0.1, 2.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> v{0};
    for (int i = 0; i < 9; ++i) v.push_back(v.back() + step(rng));
    EXPECT_EQ(detect_trend(vec(v), kCfg), Trend::ascending);
    std::reverse(v.begin(), v.end());
    EXPECT_EQ(detect_trend(vec(v), kCfg), Trend::descending);
  }
}

TEST(MovingAverage, TruncatedWindow) {
  const auto ma = moving_average(vec({1, 2, 3, 4, 5}), 1);
  EXPECT_DOUBLE_EQ(ma[0], 1.5);
  EXPECT_DOUBLE_EQ(ma[2], 3.0);
  EXPECT_DOUBLE_EQ(ma[4], 4.5);
}

TEST(FindPeaks, Examples) {
  const auto tri = find_peaks(vec({0, 3, 0}), 0.5);
  ASSERT_EQ(tri.size(), 1u);
  EXPECT_EQ(tri[0].index, 1);
  EXPECT_DOUBLE_EQ(tri[0].prominence, 3.0);
  EXPECT_DOUBLE_EQ(tri[0].width, 1.0);

  const auto tent = find_peaks(vec({0, 1, 2, 3, 2, 1, 0}), 0.5);
  ASSERT_EQ(tent.size(), 1u);
  EXPECT_EQ(tent[0].index, 3);

  EXPECT_TRUE(find_peaks(vec({1, 1, 1}), 0.5).empty());
}

TEST(FindPeaks, PlateauUsesLeftmostSample) {
  const auto p = find_peaks(vec({0, 2, 2, 2, 0}), 0.5);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].index, 1);
  EXPECT_DOUBLE_EQ(p[0].width, 3.0);
  EXPECT_TRUE(find_peaks(vec({0, 1, 2, 2}), 0.5).empty());
}

TEST(FindPeaks, ProminenceUsesHigherBase) {
  const auto p = find_peaks(vec({1, 5, 3, 9, 0}), 0.5);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p[0].prominence, 2.0);
  EXPECT_DOUBLE_EQ(p[1].prominence, 8.0);
}

TEST(Pattern, Examples) {
  const auto flat = detect_pattern(vec({5, 5, 5, 5}), kCfg);
  EXPECT_EQ(flat.pattern, Pattern::stable);
  EXPECT_EQ(flat.factor, 0.0);
  EXPECT_EQ(detect_pattern(vec({0, 1, 2, 3, 2, 1, 0}), kCfg).pattern, Pattern::peak);
  EXPECT_EQ(detect_pattern(vec({3, 2, 1, 0, 1, 2, 3}), kCfg).pattern, Pattern::valley);
}

TEST(Pattern, SuiteMatchesOracle) {
  for (const auto& c : cases::finding_suite()) {
    const auto f = vec(c.values);
    EXPECT_EQ(std::string(to_string(detect_trend(f, kCfg))), oracle::trend(c.values, 2)) << c.name;
    EXPECT_EQ(std::string(to_string(detect_pattern(f, kCfg).pattern)), oracle::pattern(c.values))
        << c.name;
    const auto peaks = find_peaks(f, 0.5);
    const auto expected = oracle::peaks(c.values, 0.5);
    ASSERT_EQ(peaks.size(), expected.size()) << c.name;
    for (std::size_t i = 0; i < peaks.size(); ++i) {
      EXPECT_EQ(peaks[i].index, expected[i].index) << c.name;
      EXPECT_NEAR(peaks[i].prominence, expected[i].prominence, 1e-12) << c.name;
      EXPECT_NEAR(peaks[i].width, expected[i].width, 1e-12) << c.name;
    }
  }
}

TEST(Pattern, SuiteCoversEveryClass) {
  std::set<std::string> seen_patterns, seen_trends;
  for (const auto& c : cases::finding_suite()) {
    seen_patterns.insert(oracle::pattern(c.values));
    seen_trends.insert(oracle::trend(c.values, 2));
  }
  EXPECT_EQ(seen_patterns.size(), 4u);
  EXPECT_EQ(seen_trends.size(), 3u);
}

TEST(Pattern, Antisymmetric) {
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Eigen::VectorXd f = vec(cases::random_series(rng, 3, 40));
    const auto a = detect_pattern(f, kCfg);
    const auto b = detect_pattern(-f, kCfg);
    EXPECT_NEAR(a.factor, -b.factor, 1e-9);
    if (a.pattern == Pattern::peak) EXPECT_EQ(b.pattern, Pattern::valley);
    if (a.pattern == Pattern::stable) EXPECT_EQ(b.pattern, Pattern::stable);
    if (a.pattern == Pattern::unstable) EXPECT_EQ(b.pattern, Pattern::unstable);
  }
}

TEST(Pattern, ScaleInvariantFactor) {
  std::mt19937 rng(12);
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXd f = vec(cases::random_series(rng, 3, 30)) * 10.0;
    const auto a = detect_pattern(f, kCfg);
    const auto b = detect_pattern(3.5 * f, kCfg);
    if (a.pattern == Pattern::stable) continue;
    EXPECT_NEAR(a.factor, b.factor, 1e-9 * std::max(1.0, std::abs(a.factor)));
  }
}

TEST(FindPeaks, ProminenceBoundedByRange) {
  std::mt19937 rng(13);
  for (int k = 0; k < 100; ++k) {
    const Eigen::VectorXd f = vec(cases::random_series(rng, 3, 30));
    for (const auto& p : find_peaks(f, 0.5)) {
      EXPECT_LE(p.prominence, f.maxCoeff() - f.minCoeff() + 1e-12);
      EXPECT_GT(p.prominence, 0.0);
    }
  }
}

TEST(Finding, FloatScalar) {
  Eigen::VectorXf f(7);
  f << 0, 1, 2, 3, 2, 1, 0;
  EXPECT_EQ(detect_pattern(f, 0.5f, 1.5f, 0.5f).pattern, Pattern::peak);
  EXPECT_EQ(detect_trend(f.reverse(), 2), Trend::neutral);
}
