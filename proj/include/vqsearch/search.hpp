#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vqsearch/data.hpp"
#include "vqsearch/embeddings.hpp"
#include "vqsearch/formatter.hpp"
#include "vqsearch/text.hpp"

namespace vqsearch {

struct DocHit {
  std::string doc_id;
  double score = 0.0;
  std::string snippet;
};

/// In-memory positional inverted index over tokenize(title + " " + body).
class Index : public DocumentStats {
 public:
  struct Posting {
    std::size_t doc;                   // position in the corpus
    std::vector<std::uint32_t> positions;  // ascending token offsets
  };

  static Index build(std::vector<Document> corpus, Tokenizer tokenizer = Tokenizer());

  std::size_t doc_count() const override { return docs_.size(); }
  std::size_t document_frequency(std::string_view term) const override;
  /// Distinct indexed terms.
  std::size_t term_count() const noexcept { return postings_.size(); }

  const std::vector<Posting>* postings(std::string_view term) const;
  const Document& document(std::size_t i) const { return docs_.at(i); }
  const std::vector<Document>& documents() const noexcept { return docs_; }
  const Tokenizer& tokenizer() const noexcept { return tokenizer_; }

  /// Scores each term as tf * ln(1 + N/df) * weight. Or sums its matching
  /// children and matches when at least one does (and every required child
  /// does); And sums its children and matches only when all do. Multi-word
  /// terms match consecutive positions. Hits sorted by score descending,
  /// then doc id ascending; at most top_k.
  std::vector<DocHit> execute(const LocalQuery& query, std::size_t top_k) const;

  /// +-radius raw words around word offset `token` of document `doc`.
  std::string snippet(std::size_t doc, std::uint32_t token, std::size_t radius = 15) const;

 private:
  struct DocText {
    std::vector<std::string> words;        // whitespace-split title + body
    std::vector<std::uint32_t> word_of;    // token offset -> word offset
  };

  std::vector<Document> docs_;
  std::vector<DocText> text_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  Tokenizer tokenizer_;
};

/// Connection settings for an Elasticsearch-compatible endpoint.
struct EsConfig {
  std::string url = "http://localhost:9200";
  std::string index = "wikipedia";
  int timeout_ms = 5000;
};

/// POST {url}/{index}/_search with a simple_query_string over title and
/// body. Throws BackendError on connection failures (status 0) and on
/// non-2xx replies (status and server reason in the message).
std::vector<DocHit> execute_es(const EsConfig& config, std::string_view query_text,
                               std::size_t top_k);

/// Common interface of the local index and the Elasticsearch client. Takes
/// canonical expressions and formats them for the backend.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  virtual std::vector<DocHit> search(const QueryExpr& canonical, std::size_t top_k) const = 0;
  virtual std::string name() const = 0;
};

class LocalBackend final : public SearchBackend {
 public:
  explicit LocalBackend(const Index& index) : index_(index) {}
  std::vector<DocHit> search(const QueryExpr& canonical, std::size_t top_k) const override;
  std::string name() const override { return "local"; }

 private:
  const Index& index_;
};

class ElasticsearchBackend final : public SearchBackend {
 public:
  explicit ElasticsearchBackend(EsConfig config) : config_(std::move(config)) {}
  std::vector<DocHit> search(const QueryExpr& canonical, std::size_t top_k) const override;
  std::string name() const override { return "es"; }

 private:
  EsConfig config_;
};

}  // namespace vqsearch
