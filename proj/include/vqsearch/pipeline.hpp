#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vqsearch/converters.hpp"
#include "vqsearch/data.hpp"
#include "vqsearch/embeddings.hpp"
#include "vqsearch/query.hpp"
#include "vqsearch/search.hpp"
#include "vqsearch/suggest.hpp"

namespace vqsearch {

struct Conversion {
  QueryExpr expr;
  std::string ir_text;
  std::string es_query;
  Anchor anchor;            // first dataset, key and range of the selection
  FindingSummary finding;   // of the anchor slice
};

struct DocumentSuggestions {
  std::string doc_id;
  Ranking datasets;
  Ranking keys;
};

struct QueryResult {
  Conversion conversion;
  std::vector<DocHit> documents;
  std::vector<DocumentSuggestions> per_document;
  Ranking pattern_keys;
  Ranking pattern_datasets;
};

struct QueryOptions {
  std::size_t top_k = 10;
  TextMode text_mode = TextMode::direct;
  PatternMethod pattern_method = PatternMethod::pearson;
};

/// Loaded resources plus the selection -> query -> suggestions pipeline.
/// Immutable after construction and safe to share between threads.
class Engine {
 public:
  Engine(DatasetCollection collection, Gazetteer gazetteer, EmbeddingModel model,
         AntonymLexicon lexicon, Index index, ConverterConfig config);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const DatasetCollection& collection() const noexcept { return collection_; }
  const Gazetteer& gazetteer() const noexcept { return gazetteer_; }
  const EmbeddingModel& model() const noexcept { return model_; }
  const AntonymLexicon& lexicon() const noexcept { return lexicon_; }
  const Index& index() const noexcept { return index_; }
  const Tokenizer& tokenizer() const noexcept { return index_.tokenizer(); }
  const ConverterConfig& config() const noexcept { return config_; }
  const LocalBackend& local_backend() const noexcept { return local_; }

  KeywordResources keyword_resources() const;

  /// Country conversion for keys the gazetteer knows, keyword conversion
  /// otherwise.
  QueryExpr convert_key(std::string_view key) const;

  /// Validates the selection and runs every converter and the combiner.
  /// Throws EmptySliceError when a (key, dataset, range) cell has no values.
  Conversion convert(const Selection& selection) const;

  QueryResult query(const Selection& selection, const SearchBackend& backend,
                    const QueryOptions& options) const;

 private:
  DatasetCollection collection_;
  Gazetteer gazetteer_;
  EmbeddingModel model_;
  AntonymLexicon lexicon_;
  Index index_;
  ConverterConfig config_;
  LocalBackend local_;
  std::unordered_map<std::string, std::size_t> doc_by_id_;
};

}  // namespace vqsearch
