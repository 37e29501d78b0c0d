#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vqsearch/converters.hpp"
#include "vqsearch/data.hpp"
#include "vqsearch/embeddings.hpp"

namespace vqsearch {

enum class RankingKind { dataset, key };

struct RankingEntry {
  std::string nominal;
  double score = 0.0;

  friend bool operator==(const RankingEntry&, const RankingEntry&) = default;
};

/// Scored nominals, best first; equal scores in lexicographic order.
struct Ranking {
  RankingKind kind = RankingKind::key;
  std::vector<RankingEntry> entries;

  static Ranking sorted(RankingKind kind, std::vector<RankingEntry> entries);
};

std::string_view to_string(RankingKind k) noexcept;

enum class TextMode { direct, indirect, nlp };
enum class PatternMethod { pearson, dtw };

std::string_view to_string(TextMode m) noexcept;
std::string_view to_string(PatternMethod m) noexcept;
/// Throw std::invalid_argument for unknown names.
TextMode parse_text_mode(std::string_view name);
PatternMethod parse_pattern_method(std::string_view name);

struct TextSuggestionResources {
  KeywordResources keyword;
  const DocumentStats& stats;
  const Gazetteer* gazetteer = nullptr;  // country terms for known keys
  std::size_t doc_keywords = 10;
};

/// Occurrences of `phrase` in `text`, compared as normalized token sequences.
std::size_t count_occurrences(std::string_view text, std::string_view phrase,
                              const Tokenizer& tokenizer = Tokenizer());

/// Scores every dataset and every key of the collection against one
/// document (title and body). Returns {datasets, keys}.
std::pair<Ranking, Ranking> suggest_from_text(const Document& doc,
                                              const DatasetCollection& collection,
                                              TextMode mode,
                                              const TextSuggestionResources& res);

/// The selected finding: one dataset, one key, one range.
struct Anchor {
  std::string dataset;
  std::string key;
  YearRange range;
};

/// Scores the other keys of the anchor's dataset and the other datasets for
/// the anchor's key over the same range. Returns {keys, datasets}.
/// Under pearson, candidates of a different length or without variance score
/// 0, and an anchor with fewer than two points or no variance yields empty
/// rankings. Throws std::invalid_argument when the anchor slice is empty.
std::pair<Ranking, Ranking> suggest_from_pattern(const Anchor& anchor,
                                                 const DatasetCollection& collection,
                                                 PatternMethod method);

}  // namespace vqsearch
