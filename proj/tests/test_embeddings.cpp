#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "support/paths.hpp"
#include "vqsearch/embeddings.hpp"
#include "vqsearch/errors.hpp"

using namespace vqsearch;

namespace {

struct RawVectors {
  std::vector<std::string> words;
  std::vector<std::vector<double>> rows;
};

RawVectors read_raw(const std::filesystem::path& p) {
  RawVectors r;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string w;
    ss >> w;
    std::vector<double> v;
    double x;
    while (ss >> x) v.push_back(x);
    r.words.push_back(w);
    r.rows.push_back(v);
  }
  return r;
}

double raw_cos(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return d / std::sqrt(na * nb);
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

class Vectors8 : public ::testing::Test {
 protected:
  Vectors8()
      : model(EmbeddingModel::load(paths::fixtures() / "vectors8.txt")),
        raw(read_raw(paths::fixtures() / "vectors8.txt")),
        lexicon({{"life expectancy", {"death", "mortality"}}}) {}
  EmbeddingModel model;
  RawVectors raw;
  AntonymLexicon lexicon;
};

}  // namespace

TEST_F(Vectors8, Loads) {
  EXPECT_EQ(model.size(), 40u);
  EXPECT_EQ(model.dimension(), 8);
  ASSERT_TRUE(model.find("longevity"));
  EXPECT_FALSE(model.find("zzz"));
}

TEST(EmbeddingLoad, Errors) {
  EXPECT_THROW(EmbeddingModel::load(write_temp("vq_empty.txt", "")), DataError);
  try {
    EmbeddingModel::load(write_temp("vq_short.txt", "a 1 2 3\nb 1 2\n"));
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(EmbeddingModel::load("/nonexistent/vectors.txt"), DataError);
}

TEST(EmbeddingLoad, FirstDuplicateWins) {
  const auto m = EmbeddingModel::load(write_temp("vq_dup.txt", "a 1 0\nb 0 1\na 0 1\n"));
  EXPECT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m.vector(*m.find("a"))[0], 1.0);
}

TEST(Cosine, Examples) {
  Eigen::Vector3d v(1, 2, 3);
  EXPECT_DOUBLE_EQ(cosine(v, v), 1.0);
  EXPECT_DOUBLE_EQ(cosine(v, -v), -1.0);
  EXPECT_DOUBLE_EQ(cosine(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)), 0.0);
  EXPECT_THROW(cosine(Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 1)), std::invalid_argument);
  EXPECT_THROW(cosine(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(3)), std::invalid_argument);
  EXPECT_FLOAT_EQ(cosine(Eigen::Vector2f(1, 1), Eigen::Vector2f(1, 0)), std::sqrt(0.5f));
}

TEST_F(Vectors8, ExpandMatchesBruteForceNeighbours) {
  const auto terms = expand("life expectancy", model, lexicon, 4);
  ASSERT_GE(terms.size(), 2u);
  EXPECT_EQ(terms[0], (WeightedTerm{"life", 1.0, false}));
  EXPECT_EQ(terms[1], (WeightedTerm{"expectancy", 1.0, false}));

  std::vector<double> centre(8, 0.0);
  for (std::size_t i = 0; i < raw.words.size(); ++i) {
    if (raw.words[i] == "life" || raw.words[i] == "expectancy") {
      for (int d = 0; d < 8; ++d) centre[d] += raw.rows[i][d] / 2;
    }
  }
  std::vector<std::pair<double, std::string>> scored;
  for (std::size_t i = 0; i < raw.words.size(); ++i) {
    const auto& w = raw.words[i];
    if (w == "life" || w == "expectancy" || w == "death" || w == "mortality") continue;
    scored.push_back({-raw_cos(centre, raw.rows[i]), w});
  }
  std::sort(scored.begin(), scored.end());

  ASSERT_EQ(terms.size(), 2u + 4u + 2u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(terms[2 + i].term, scored[i].second);
    EXPECT_NEAR(terms[2 + i].weight, -scored[i].first, 1e-12);
    EXPECT_FALSE(terms[2 + i].negative);
  }
  EXPECT_EQ(terms[6], (WeightedTerm{"death", 1.0, true}));
  EXPECT_EQ(terms[7], (WeightedTerm{"mortality", 1.0, true}));
  for (const auto& t : terms) {
    EXPECT_GT(t.weight, 0.0);
    EXPECT_LE(t.weight, 1.0);
  }
}

TEST_F(Vectors8, ExpandOutOfVocabulary) {
  const auto terms = expand("zzz-unknown", model, AntonymLexicon(), 5);
  EXPECT_EQ(terms, (std::vector<WeightedTerm>{{"zzz", 1.0, false}, {"unknown", 1.0, false}}));
}

TEST_F(Vectors8, ExpandZeroNeighbours) {
  EXPECT_EQ(expand("war", model, AntonymLexicon(), 0).size(), 1u);
}

TEST_F(Vectors8, EmbedTerms) {
  const auto war = model.vector(*model.find("war"));
  EXPECT_TRUE(embed_terms({{"war", 1.0, false}}, model).isApprox(war));
  const auto army = model.vector(*model.find("army"));
  const Eigen::VectorXd mid = (war + army) / 2;
  EXPECT_TRUE(embed_terms({{"war", 0.5, false}, {"army", 0.5, false}}, model).isApprox(mid));
  EXPECT_TRUE(embed_terms({{"war", 1.0, false}, {"death", 1.0, true}}, model).isApprox(war));
  EXPECT_THROW(embed_terms({{"zzz", 1.0, false}}, model), std::invalid_argument);
}

namespace {

class TwoDocs : public DocumentStats {
 public:
  std::size_t doc_count() const override { return 2; }
  std::size_t document_frequency(std::string_view t) const override {
    if (t == "war" || t == "peace") return 2;
    if (t == "famine") return 1;
    return 0;
  }
};

}  // namespace

TEST(ExtractKeywords, Examples) {
  TwoDocs stats;
  const auto top = extract_keywords("war war war peace", stats, 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].first, "war");
  EXPECT_NEAR(top[0].second, 3 * std::log(2.0), 1e-12);
  EXPECT_TRUE(extract_keywords("war", stats, 0).empty());

  const auto mixed = extract_keywords("war famine peace", stats, 3);
  ASSERT_EQ(mixed.size(), 3u);
  EXPECT_EQ(mixed[0].first, "famine");
  EXPECT_NEAR(mixed[0].second, std::log(3.0), 1e-12);
  EXPECT_EQ(mixed[1].first, "peace");
  EXPECT_EQ(mixed[2].first, "war");
}

TEST(AntonymLexicon, LoadAndLookup) {
  const auto p = write_temp("vq_ant.txt", "# comment\nLife Expectancy: death, mortality\n\npeak: valley\n");
  const auto lex = AntonymLexicon::load(p);
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.lookup("life expectancy"), (std::vector<std::string>{"death", "mortality"}));
  EXPECT_EQ(lex.lookup("PEAK"), (std::vector<std::string>{"valley"}));
  EXPECT_TRUE(lex.lookup("none").empty());
  EXPECT_THROW(AntonymLexicon::load(write_temp("vq_ant_bad.txt", "no colon here\n")), DataError);
}
