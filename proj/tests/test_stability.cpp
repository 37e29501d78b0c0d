#include <gtest/gtest.h>

#include <json.hpp>
#include <set>

#include "oracles/stability_oracle.hpp"
#include "support/paths.hpp"
#include "vqsearch/config.hpp"
#include "vqsearch/errors.hpp"
#include "vqsearch/pipeline.hpp"
#include "vqsearch/stability.hpp"

using namespace vqsearch;

TEST(StabilityMetric, UnitCases) {
  const std::vector<std::string> d{"a", "b", "c", "d"};
  EXPECT_EQ(stability(d, {d, d}), 1.0);
  EXPECT_EQ(stability(d, {{"x", "y"}, {}}), 0.0);
  EXPECT_EQ(stability(d, {{"a", "b", "x", "y"}}), 0.5);
  EXPECT_EQ(stability(d, {{"a", "b", "c", "d"}, {"e"}}), 0.5);
  EXPECT_EQ(stability(d, {{"a", "a", "b"}}), 0.5);
  EXPECT_THROW(stability({}, {d}), std::invalid_argument);
  EXPECT_THROW(stability(d, {}), std::invalid_argument);
}

TEST(Perturb, InteriorRangeGivesNine) {
  const auto r = perturb({1910, 1915}, 3, {1900, 1939});
  ASSERT_EQ(r.size(), 9u);
  EXPECT_EQ(r.front(), (YearRange{1910, 1915}));
  std::set<YearRange> uniq(r.begin(), r.end());
  EXPECT_EQ(uniq.size(), 9u);
  for (const auto& x : r) {
    EXPECT_LE(std::abs(x.from - 1910), 1);
    EXPECT_LE(std::abs(x.to - 1915), 1);
  }
  EXPECT_EQ(perturb({1910, 1915}, 5, {1900, 1939}).size(), 25u);
  EXPECT_EQ(perturb({1910, 1915}, 1, {1900, 1939}).size(), 1u);
}

TEST(Perturb, ClampsAndDropsDegenerate) {
  const auto edge = perturb({1900, 1905}, 3, {1900, 1939});
  EXPECT_EQ(edge.size(), 6u);
  const auto point = perturb({1920, 1920}, 3, {1900, 1939});
  for (const auto& r : point) EXPECT_LE(r.from, r.to);
  EXPECT_EQ(point.size(), 6u);
  EXPECT_THROW(perturb({1910, 1915}, 2, {1900, 1939}), std::invalid_argument);
  EXPECT_THROW(perturb({1910, 1915}, 0, {1900, 1939}), std::invalid_argument);
}

TEST(ExtractPatterns, RankedByProminence) {
  Series s{"x", {2000, 2001, 2002, 2003, 2004, 2005, 2006, 2007, 2008}, {}};
  s.values.resize(9);
  s.values << 0, 1, 0, 0, 6, 0, 0, -3, 0;
  ConverterConfig cfg;
  const auto p = extract_top_patterns(s, 2, cfg);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].prominence, 6.0);
  EXPECT_EQ(p[0].years, (YearRange{2003, 2005}));
  EXPECT_EQ(p[0].pattern, Pattern::peak);
  EXPECT_EQ(p[1].prominence, 3.0);
  EXPECT_EQ(p[1].pattern, Pattern::valley);
  EXPECT_TRUE(extract_top_patterns({"y", {2000, 2001}, Eigen::Vector2d(1, 2)}, 3, cfg).empty());
}

namespace {

class Fixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    engine = load_engine(Config::load(paths::fixtures() / "stability" / "config.json")).release();
  }
  static void TearDownTestSuite() { delete engine; }
  static Engine* engine;
};
Engine* Fixture::engine = nullptr;

}  // namespace

TEST_F(Fixture, MatchesReplay) {
  StabilityConfig cfg;
  const auto report = run_stability(*engine, engine->local_backend(), cfg);
  const auto replay = oracle::replay_stability(*engine, 10, 3, 6, WeightProfile::uniform);

  ASSERT_EQ(report.details.size(), replay.patterns.size());
  for (std::size_t i = 0; i < report.details.size(); ++i) {
    const auto& a = report.details[i];
    const auto& b = replay.patterns[i];
    EXPECT_EQ(a.key, b.key);
    EXPECT_EQ(a.range, (YearRange{b.from, b.to}));
    EXPECT_EQ(std::string(to_string(a.pattern)), b.pattern);
    EXPECT_NEAR(a.stability, b.stability, 1e-12) << a.key << " " << a.range.from;
  }
  EXPECT_EQ(report.query_count, replay.queries);
  EXPECT_NEAR(report.overall_mean, replay.overall, 1e-12);
  for (const auto& [p, s] : report.per_pattern_type) {
    EXPECT_NEAR(s.mean, replay.class_mean.at(std::string(to_string(p))), 1e-12);
  }
}

TEST_F(Fixture, PeaksAndValleysAtLeastAsStableAsUnstable) {
  const auto report = run_stability(*engine, engine->local_backend(), {});
  ASSERT_TRUE(report.per_pattern_type.count(Pattern::unstable));
  const double unstable = report.per_pattern_type.at(Pattern::unstable).mean;
  for (Pattern p : {Pattern::peak, Pattern::valley}) {
    ASSERT_TRUE(report.per_pattern_type.count(p));
    EXPECT_GE(report.per_pattern_type.at(p).mean, unstable);
  }
  EXPECT_EQ(report.failed_queries, 0u);
}

TEST_F(Fixture, ReportSerializations) {
  const auto report = run_stability(*engine, engine->local_backend(), {});
  const auto j = nlohmann::json::parse(report.to_json());
  EXPECT_EQ(j["pattern_count"], report.pattern_count);
  EXPECT_TRUE(j["per_pattern_type"].contains("peak"));
  EXPECT_EQ(j["patterns"].size(), report.details.size());
  const auto table = report.to_table();
  EXPECT_NE(table.find("overall"), std::string::npos);
  EXPECT_NE(table.find("valley"), std::string::npos);
}

namespace {

class FailingBackend : public SearchBackend {
 public:
  std::vector<DocHit> search(const QueryExpr&, std::size_t) const override {
    throw BackendError(503, "down");
  }
  std::string name() const override { return "failing"; }
};

}  // namespace

TEST_F(Fixture, BackendFailuresAreCounted) {
  const auto report = run_stability(*engine, FailingBackend(), {});
  EXPECT_EQ(report.pattern_count, 0u);
  EXPECT_GT(report.failed_queries, 0u);
  EXPECT_EQ(report.skipped_patterns, report.failed_queries);
  EXPECT_GT(report.query_count, report.failed_queries);
}
