#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "support/paths.hpp"
#include "vqsearch/data.hpp"
#include "vqsearch/errors.hpp"

using namespace vqsearch;

namespace {

const char* kCsv =
    "key,1950,1951,1952,1953\n"
    "usa,70.1,70.4,,71.0\n"
    "Chile,55,56,57,58\n";

}  // namespace

TEST(Csv, ParsesRowsAndSkipsEmptyCells) {
  const auto ds = parse_dataset_csv("Life", kCsv, "mem");
  ASSERT_EQ(ds.series.size(), 2u);
  const auto* usa = ds.find("USA");
  ASSERT_NE(usa, nullptr);
  EXPECT_EQ(usa->key, "usa");
  EXPECT_EQ(usa->years, (std::vector<int>{1950, 1951, 1953}));
  EXPECT_DOUBLE_EQ(usa->values[1], 70.4);
  EXPECT_EQ(ds.find("chile")->key, "Chile");
}

TEST(Csv, Errors) {
  EXPECT_THROW(parse_dataset_csv("x", "key,1950\na,1\na,2\n", "mem"), DataError);
  EXPECT_THROW(parse_dataset_csv("x", "key,1951,1950\na,1,2\n", "mem"), DataError);
  EXPECT_THROW(parse_dataset_csv("x", "key,abc\na,1\n", "mem"), DataError);
  EXPECT_THROW(parse_dataset_csv("x", "key,1950\na,zz\n", "mem"), DataError);
  EXPECT_THROW(parse_dataset_csv("x", "key,1950\na,1,2\n", "mem"), DataError);
  EXPECT_THROW(parse_dataset_csv("x", "", "mem"), DataError);
  try {
    parse_dataset_csv("x", "key,1950\na,1\nb,q\n", "life.csv");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("life.csv:3"), std::string::npos) << e.what();
  }
}

TEST(Collection, LoadsManifest) {
  const auto c = DatasetCollection::load(paths::data() / "collection" / "manifest.json");
  EXPECT_EQ(c.id(), "gapminder-mini");
  EXPECT_EQ(c.datasets().size(), 4u);
  EXPECT_NE(c.find("life expectancy"), nullptr);
  EXPECT_NE(c.find("Life Expectancy", "united states"), nullptr);
  EXPECT_THROW(c.dataset("Population"), NotFoundError);
  EXPECT_THROW(c.series("Life Expectancy", "Atlantis"), NotFoundError);
  EXPECT_EQ(c.keys().size(), 16u);
}

TEST(Collection, TwoDatasetManifest) {
  const auto dir = std::filesystem::temp_directory_path() / "vq_manifest";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "a.csv") << kCsv;
  std::ofstream(dir / "b.csv") << kCsv;
  std::ofstream(dir / "m.json") << R"({"id": "two", "datasets": {"A": "a.csv", "B": "b.csv"}})";
  const auto c = DatasetCollection::load(dir / "m.json");
  EXPECT_EQ(c.datasets().size(), 2u);
  EXPECT_EQ(c.series_count(), 4u);
  std::ofstream(dir / "bad.json") << R"({"id": "two", "datasets": {"A": "missing.csv"}})";
  EXPECT_THROW(DatasetCollection::load(dir / "bad.json"), DataError);
}

TEST(Slice, Ranges) {
  DatasetCollection c("t", {parse_dataset_csv("Life", kCsv, "mem")});
  EXPECT_EQ(slice(c, "life", "chile", 1900, 2000).size(), 4);
  const auto one = slice(c, "life", "chile", 1951, 1951);
  ASSERT_EQ(one.size(), 1);
  EXPECT_EQ(one[0], 56);
  EXPECT_EQ(slice(c, "life", "chile", 1800, 1900).size(), 0);
  EXPECT_EQ(slice(c, "life", "usa", 1951, 1953).size(), 2);
  EXPECT_THROW(slice(c, "life", "peru", 1950, 1951), NotFoundError);
}

TEST(Selection, Validate) {
  DatasetCollection c("t", {parse_dataset_csv("Life", kCsv, "mem")});
  Selection s{{"Life"}, {"usa"}, {{1950, 1953}}};
  EXPECT_NO_THROW(s.validate(c));
  s.year_ranges = {{1953, 1950}};
  EXPECT_THROW(s.validate(c), std::invalid_argument);
  s.year_ranges = {};
  EXPECT_THROW(s.validate(c), std::invalid_argument);
  s = {{"Life"}, {"peru"}, {{1950, 1953}}};
  EXPECT_THROW(s.validate(c), NotFoundError);
  EXPECT_EQ(parse_weight_profile("gaussian"), WeightProfile::gaussian);
  EXPECT_THROW(parse_weight_profile("bell"), std::invalid_argument);
}

TEST(Gazetteer, BundledUnitedStates) {
  const auto g = Gazetteer::load(paths::data() / "gazetteer.json");
  const auto* us = g.find("united states");
  ASSERT_NE(us, nullptr);
  EXPECT_EQ(us->name, "united states");
  const std::set<std::string> syn(us->synonyms.begin(), us->synonyms.end());
  EXPECT_EQ(syn, (std::set<std::string>{"usa", "america", "american", "united states of america"}));
  EXPECT_EQ(us->region, "north america");
  EXPECT_EQ(g.find("USA"), us);
  EXPECT_EQ(g.find("Atlantis"), nullptr);
  const auto near = g.near_matches("Unted States");
  ASSERT_FALSE(near.empty());
  EXPECT_EQ(near[0], "united states");
}

TEST(Corpus, Parse) {
  const auto docs = parse_corpus(
      "{\"id\":\"a\",\"title\":\"A\",\"body\":\"x\"}\n"
      "{\"id\":\"b\",\"body\":\"y\",\"url\":\"http://b\"}\n\n"
      "{\"id\":\"c\",\"title\":\"C\",\"body\":\"z\"}\n",
      "mem");
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[1].url, "http://b");
  EXPECT_FALSE(docs[0].url);
  EXPECT_THROW(parse_corpus("{\"id\":\"a\",\"body\":\"x\"}\n{\"id\":\"a\",\"body\":\"y\"}\n", "mem"),
               DataError);
  EXPECT_THROW(parse_corpus("{\"id\":\"a\"}\n", "mem"), DataError);
  EXPECT_THROW(parse_corpus("not json\n", "mem"), DataError);
  EXPECT_EQ(load_corpus(paths::fixtures() / "corpus3.jsonl").size(), 3u);
}
