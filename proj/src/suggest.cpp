#include "vqsearch/suggest.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "vqsearch/similarity.hpp"

namespace vqsearch {
namespace {

std::size_t count_sequence(const std::vector<std::string>& text,
                           const std::vector<std::string>& seq) {
  if (seq.empty() || seq.size() > text.size()) return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i + seq.size() <= text.size(); ++i) {
    if (std::equal(seq.begin(), seq.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) ++n;
  }
  return n;
}

std::vector<WeightedTerm> nominal_terms(std::string_view nominal, bool is_key,
                                        const TextSuggestionResources& res) {
  if (is_key && res.gazetteer) {
    if (const GazetteerEntry* e = res.gazetteer->find(nominal)) return country_terms(*e);
  }
  const KeywordResources& k = res.keyword;
  return expand(nominal, k.model, k.lexicon, k.neighbor_k, k.tokenizer);
}

std::optional<Eigen::VectorXd> try_embed(const std::vector<WeightedTerm>& terms,
                                         const KeywordResources& k) {
  try {
    return embed_terms(terms, k.model, k.tokenizer);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

Ranking Ranking::sorted(RankingKind kind, std::vector<RankingEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.nominal < b.nominal;
  });
  return {kind, std::move(entries)};
}

std::string_view to_string(RankingKind k) noexcept {
  return k == RankingKind::dataset ? "dataset" : "key";
}

std::string_view to_string(TextMode m) noexcept {
  switch (m) {
    case TextMode::direct: return "direct";
    case TextMode::indirect: return "indirect";
    case TextMode::nlp: return "nlp";
  }
  return "";
}

std::string_view to_string(PatternMethod m) noexcept {
  return m == PatternMethod::pearson ? "pearson" : "dtw";
}

TextMode parse_text_mode(std::string_view name) {
  if (name == "direct") return TextMode::direct;
  if (name == "indirect") return TextMode::indirect;
  if (name == "nlp") return TextMode::nlp;
  throw std::invalid_argument("unknown text mode '" + std::string(name) +
                              "' (expected direct|indirect|nlp)");
}

PatternMethod parse_pattern_method(std::string_view name) {
  if (name == "pearson") return PatternMethod::pearson;
  if (name == "dtw") return PatternMethod::dtw;
  throw std::invalid_argument("unknown pattern method '" + std::string(name) +
                              "' (expected pearson|dtw)");
}

std::size_t count_occurrences(std::string_view text, std::string_view phrase,
                              const Tokenizer& tokenizer) {
  return count_sequence(tokenizer.normalize(text), tokenizer.normalize(phrase));
}

std::pair<Ranking, Ranking> suggest_from_text(const Document& doc,
                                              const DatasetCollection& collection,
                                              TextMode mode,
                                              const TextSuggestionResources& res) {
  const Tokenizer& tok = res.keyword.tokenizer;
  const std::string text = doc.title + " " + doc.body;
  const auto tokens = tok.normalize(text);

  std::optional<Eigen::VectorXd> doc_vec;
  if (mode == TextMode::nlp) {
    const auto keywords = extract_keywords(text, res.stats, res.doc_keywords, tok);
    if (!keywords.empty() && keywords.front().second > 0.0) {
      std::vector<WeightedTerm> terms;
      for (const auto& [word, score] : keywords) {
        if (score > 0.0) terms.push_back({word, score / keywords.front().second, false});
      }
      doc_vec = try_embed(terms, res.keyword);
    }
  }

  auto score = [&](const std::string& nominal, bool is_key) -> double {
    switch (mode) {
      case TextMode::direct:
        return static_cast<double>(count_sequence(tokens, tok.normalize(nominal)));
      case TextMode::indirect: {
        const auto terms = nominal_terms(nominal, is_key, res);
        if (terms.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& t : terms) {
          sum += static_cast<double>(count_sequence(tokens, tok.normalize(t.term)));
        }
        return sum / static_cast<double>(terms.size());
      }
      case TextMode::nlp: {
        if (!doc_vec) return 0.0;
        const auto v = try_embed(nominal_terms(nominal, is_key, res), res.keyword);
        if (!v || v->norm() == 0.0 || doc_vec->norm() == 0.0) return 0.0;
        return cosine(*v, *doc_vec);
      }
    }
    return 0.0;
  };

  std::vector<RankingEntry> datasets;
  for (const auto& [_, ds] : collection.datasets()) {
    datasets.push_back({ds.name, score(ds.name, false)});
  }
  std::vector<RankingEntry> keys;
  for (const auto& key : collection.keys()) keys.push_back({key, score(key, true)});
  return {Ranking::sorted(RankingKind::dataset, std::move(datasets)),
          Ranking::sorted(RankingKind::key, std::move(keys))};
}

std::pair<Ranking, Ranking> suggest_from_pattern(const Anchor& anchor,
                                                 const DatasetCollection& collection,
                                                 PatternMethod method) {
  const Eigen::VectorXd f = slice(collection, anchor.dataset, anchor.key,
                                  anchor.range.from, anchor.range.to);
  if (f.size() == 0) {
    throw std::invalid_argument("anchor " + anchor.key + " / " + anchor.dataset +
                                " has no values in " + std::to_string(anchor.range.from) +
                                "-" + std::to_string(anchor.range.to));
  }
  Ranking keys{RankingKind::key, {}};
  Ranking datasets{RankingKind::dataset, {}};
  if (method == PatternMethod::pearson &&
      (f.size() < 2 || (f.array() == f[0]).all())) {
    return {keys, datasets};
  }

  auto similarity = [&](const Series* s) -> double {
    if (!s) return 0.0;
    const auto [first, last] = s->span(anchor.range.from, anchor.range.to);
    if (last <= first) return 0.0;
    const Eigen::VectorXd g = s->values.segment(first, last - first);
    if (method == PatternMethod::dtw) return dtw_similarity(f, g);
    if (g.size() != f.size() || (g.array() == g[0]).all()) return 0.0;
    return pearson(f, g);
  };

  const Dataset& home = collection.dataset(anchor.dataset);
  const Series& self = collection.series(anchor.dataset, anchor.key);
  std::vector<RankingEntry> key_entries;
  for (const auto& [id, s] : home.series) {
    if (&s == &self) continue;
    key_entries.push_back({s.key, similarity(&s)});
  }
  std::vector<RankingEntry> dataset_entries;
  for (const auto& [id, ds] : collection.datasets()) {
    if (&ds == &home) continue;
    dataset_entries.push_back({ds.name, similarity(ds.find(anchor.key))});
  }
  return {Ranking::sorted(RankingKind::key, std::move(key_entries)),
          Ranking::sorted(RankingKind::dataset, std::move(dataset_entries))};
}

}  // namespace vqsearch
