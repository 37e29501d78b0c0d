#include <gtest/gtest.h>

#include <json.hpp>
#include <thread>

#include "oracles/scoring_oracle.hpp"
#include "support/cases.hpp"
#include "support/paths.hpp"
#include "vqsearch/errors.hpp"
#include "vqsearch/search.hpp"

#include <httplib.h>

using namespace vqsearch;

namespace {

Index corpus3() { return Index::build(load_corpus(paths::fixtures() / "corpus3.jsonl")); }

std::vector<DocHit> run(const Index& idx, const std::string& q, std::size_t k = 10) {
  return idx.execute(to_local(parse(q)), k);
}

std::vector<std::string> ids(const std::vector<DocHit>& hits) {
  std::vector<std::string> out;
  for (const auto& h : hits) out.push_back(h.doc_id);
  return out;
}

using V = std::vector<std::string>;

}  // namespace

TEST(Index, Statistics) {
  const auto idx = corpus3();
  EXPECT_EQ(idx.doc_count(), 3u);
  EXPECT_EQ(idx.document_frequency("norway"), 2u);
  EXPECT_EQ(idx.document_frequency("sweden"), 1u);
  EXPECT_EQ(idx.document_frequency("the"), 0u);
  ASSERT_NE(idx.postings("sweden"), nullptr);
  EXPECT_EQ(idx.postings("sweden")->front().positions, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Index, TermScore) {
  const auto idx = corpus3();
  const auto hits = run(idx, "sweden");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].doc_id, "d1");
  EXPECT_NEAR(hits[0].score, 3 * std::log(1 + 3.0 / 1), 1e-12);
  const auto w = run(idx, "sweden^0.5");
  EXPECT_NEAR(w[0].score, 1.5 * std::log(4.0), 1e-12);
}

TEST(Index, OrAndRequired) {
  const auto idx = corpus3();
  EXPECT_EQ(ids(run(idx, "(norway | chile)")), (V{"d3", "d1", "d2"}));
  EXPECT_EQ(ids(run(idx, "(norway & longevity)")), (V{"d2"}));
  EXPECT_EQ(ids(run(idx, "(norway | \"longevity\")")), (V{"d2"}));
  EXPECT_TRUE(run(idx, "(norway & atlantis)").empty());
}

TEST(Index, PhraseNeedsAdjacency) {
  const auto idx = corpus3();
  EXPECT_EQ(ids(run(idx, "(income per person)")), (V{"d3"}));
  EXPECT_TRUE(run(idx, "(income person)").empty());
  EXPECT_TRUE(run(idx, "(person per income)").empty());
  EXPECT_EQ(ids(run(idx, "(sweden norway)")), (V{"d1"}));
}

TEST(Index, NegatedTermsStillMatch) {
  const auto idx = corpus3();
  EXPECT_EQ(ids(run(idx, "-war")), (V{"d3"}));
}

TEST(Index, TopKAndTies) {
  const auto idx = corpus3();
  EXPECT_EQ(ids(run(idx, "(sweden | longevity | chile)", 2)), (V{"d1", "d2"}));
  EXPECT_EQ(ids(run(idx, "(longevity | chile)")), (V{"d2", "d3"}));
  EXPECT_THROW(run(idx, "war", 0), std::invalid_argument);
}

TEST(Index, Snippet) {
  const auto idx = corpus3();
  const auto hits = run(idx, "1891");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].snippet, "Chile The war in Chile lowered income per person in 1891.");
  std::string body;
  for (int i = 0; i < 40; ++i) body += "w" + std::to_string(i) + " ";
  const auto big = Index::build({{"x", "", body + "target", std::nullopt}});
  const auto s = big.execute(to_local(parse("target")), 1)[0].snippet;
  EXPECT_EQ(s.substr(0, 4), "w25 ");
  EXPECT_EQ(s.substr(s.size() - 6), "target");
}

TEST(Index, MatchesScoringOracle) {
  const auto docs = load_corpus(paths::data() / "corpus.jsonl");
  const auto idx = Index::build(docs);
  const oracle::Scorer scorer(docs, idx.tokenizer());
  cases::ExprGenerator gen(21);
  int nonempty = 0;
  for (int i = 0; i < 300; ++i) {
    const auto q = simplify(gen.next(3));
    const auto got = idx.execute(to_local(q), 10);
    const auto want = scorer.rank(q, 10);
    ASSERT_EQ(got.size(), want.size()) << print(q);
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k].doc_id, want[k].id) << print(q);
      EXPECT_NEAR(got[k].score, want[k].score, 1e-9) << print(q);
    }
    nonempty += !got.empty();
  }
  EXPECT_GT(nonempty, 30);
}

class MockEs : public ::testing::Test {
 protected:
  void SetUp() override {
    server.Post("/wikipedia/_search", [this](const httplib::Request& req, httplib::Response& res) {
      last_body = req.body;
      if (fail_status) {
        res.status = fail_status;
        res.set_content(R"({"error":{"reason":"index broke"}})", "application/json");
        return;
      }
      res.set_content(R"({"hits":{"hits":[
        {"_id":"a","_score":2.5,"_source":{"title":"A","body":"alpha body"},
         "highlight":{"body":["<em>alpha</em> body"]}},
        {"_id":"b","_score":1.0,"_source":{"title":"B","body":"beta body"}}]}})",
                      "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
    config.url = "http://127.0.0.1:" + std::to_string(port);
  }
  void TearDown() override {
    server.stop();
    thread.join();
  }

  httplib::Server server;
  std::thread thread;
  int port = 0;
  int fail_status = 0;
  std::string last_body;
  EsConfig config;
};

TEST_F(MockEs, MapsHitsAndSendsQuery) {
  const auto hits = execute_es(config, "(a + \"b c\")", 5);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc_id, "a");
  EXPECT_EQ(hits[0].score, 2.5);
  EXPECT_EQ(hits[0].snippet, "<em>alpha</em> body");
  EXPECT_EQ(hits[1].snippet, "beta body");
  const auto body = nlohmann::json::parse(last_body);
  EXPECT_EQ(body["size"], 5);
  EXPECT_EQ(body["query"]["simple_query_string"]["query"], "(a + \"b c\")");
}

TEST_F(MockEs, BackendFormatsCanonicalQuery) {
  ElasticsearchBackend backend(config);
  EXPECT_EQ(backend.name(), "es");
  backend.search(parse("(a & -b^0.5)"), 3);
  EXPECT_EQ(nlohmann::json::parse(last_body)["query"]["simple_query_string"]["query"],
            "(a + b^0.5)");
}

TEST_F(MockEs, ErrorStatus) {
  fail_status = 500;
  try {
    execute_es(config, "x", 1);
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_EQ(e.status(), 500);
    EXPECT_NE(std::string(e.what()).find("index broke"), std::string::npos);
  }
}

TEST(Es, Unreachable) {
  EsConfig c;
  c.url = "http://127.0.0.1:1";
  c.timeout_ms = 500;
  try {
    execute_es(c, "x", 1);
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_EQ(e.status(), 0);
  }
}
