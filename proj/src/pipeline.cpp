#include "vqsearch/pipeline.hpp"

#include "vqsearch/combiner.hpp"
#include "vqsearch/errors.hpp"
#include "vqsearch/formatter.hpp"

namespace vqsearch {

Engine::Engine(DatasetCollection collection, Gazetteer gazetteer, EmbeddingModel model,
               AntonymLexicon lexicon, Index index, ConverterConfig config)
    : collection_(std::move(collection)),
      gazetteer_(std::move(gazetteer)),
      model_(std::move(model)),
      lexicon_(std::move(lexicon)),
      index_(std::move(index)),
      config_(config),
      local_(index_) {
  config_.validate();
  for (std::size_t i = 0; i < index_.doc_count(); ++i) {
    doc_by_id_.emplace(index_.document(i).id, i);
  }
}

KeywordResources Engine::keyword_resources() const {
  return {model_, lexicon_, index_.tokenizer(), config_.neighbor_k};
}

QueryExpr Engine::convert_key(std::string_view key) const {
  if (gazetteer_.find(key)) return convert_country(key, gazetteer_);
  return convert_keyword(key, keyword_resources());
}

Conversion Engine::convert(const Selection& selection) const {
  selection.validate(collection_);
  const KeywordResources res = keyword_resources();

  ConversionBundle bundle;
  for (const auto& key : selection.keys) bundle.country_exprs.emplace_back(key, convert_key(key));
  for (const auto& name : selection.dataset_names) {
    bundle.dataset_exprs.emplace_back(name, convert_keyword(collection_.dataset(name).name, res));
  }
  for (const auto& r : selection.year_ranges) {
    bundle.year_exprs.emplace_back(r, convert_years(r.from, r.to, selection.profile));
  }

  std::optional<FindingSummary> anchor_finding;
  for (const auto& key : selection.keys) {
    for (const auto& name : selection.dataset_names) {
      for (const auto& r : selection.year_ranges) {
        const Eigen::VectorXd f = slice(collection_, name, key, r.from, r.to);
        if (f.size() == 0) {
          throw EmptySliceError("no values for " + key + " in " + name + " between " +
                                std::to_string(r.from) + " and " + std::to_string(r.to));
        }
        if (!anchor_finding) anchor_finding = analyze_finding(f, config_);
        bundle.finding_exprs.emplace(ConversionBundle::FindingKey{key, name, r},
                                     convert_finding(f, config_, res));
      }
    }
  }

  QueryExpr expr = combine(bundle);
  Conversion out{expr,
                 print(expr),
                 to_es_simple(expr),
                 {selection.dataset_names.front(), selection.keys.front(),
                  selection.year_ranges.front()},
                 *anchor_finding};
  return out;
}

QueryResult Engine::query(const Selection& selection, const SearchBackend& backend,
                          const QueryOptions& options) const {
  QueryResult out{convert(selection), {}, {}, {RankingKind::key, {}},
                  {RankingKind::dataset, {}}};
  out.documents = backend.search(out.conversion.expr, options.top_k);

  const TextSuggestionResources res{keyword_resources(), index_, &gazetteer_};
  for (const auto& hit : out.documents) {
    auto it = doc_by_id_.find(hit.doc_id);
    const Document doc = it != doc_by_id_.end() ? index_.document(it->second)
                                                : Document{hit.doc_id, "", hit.snippet, {}};
    auto [datasets, keys] = suggest_from_text(doc, collection_, options.text_mode, res);
    out.per_document.push_back({hit.doc_id, std::move(datasets), std::move(keys)});
  }

  auto [keys, datasets] =
      suggest_from_pattern(out.conversion.anchor, collection_, options.pattern_method);
  out.pattern_keys = std::move(keys);
  out.pattern_datasets = std::move(datasets);
  return out;
}

}  // namespace vqsearch
