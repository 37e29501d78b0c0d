#pragma once

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <vector>

#include "vqsearch/data.hpp"
#include "vqsearch/embeddings.hpp"
#include "vqsearch/finding.hpp"
#include "vqsearch/query.hpp"

namespace vqsearch {

struct ConverterConfig {
  Eigen::Index ma_window = 2;     // moving-average half window
  double lambda1 = 0.5;           // sigma below which a finding is stable
  double lambda2 = 1.5;           // |pf| above which it is a peak or valley
  std::size_t neighbor_k = 6;     // embedding neighbours per keyword
  double width_rel_height = 0.5;  // peak width measured at this fraction
  WeightProfile profile = WeightProfile::uniform;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Everything keyword expansion needs.
struct KeywordResources {
  const EmbeddingModel& model;
  const AntonymLexicon& lexicon;
  const Tokenizer& tokenizer;
  std::size_t neighbor_k;
};

template <typename Derived>
Trend detect_trend(const Eigen::MatrixBase<Derived>& f, const ConverterConfig& cfg) {
  return detect_trend(f, cfg.ma_window);
}

template <typename Derived>
PatternResult<typename Derived::Scalar> detect_pattern(
    const Eigen::MatrixBase<Derived>& f, const ConverterConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  return detect_pattern(f, static_cast<Scalar>(cfg.lambda1),
                        static_cast<Scalar>(cfg.lambda2),
                        static_cast<Scalar>(cfg.width_rel_height));
}

struct FindingSummary {
  Trend trend;
  Pattern pattern;
  double factor;
};

FindingSummary analyze_finding(const Eigen::VectorXd& f, const ConverterConfig& cfg);

/// Builds an or-group (or a lone term) from expansion output.
QueryExpr to_expression(const std::vector<WeightedTerm>& terms);

/// Or over the keyword's tokens, embedding neighbours and lexicon antonyms.
QueryExpr convert_keyword(std::string_view name, const KeywordResources& res);

/// Name, synonyms (weight 1) and region (region_weight) of a country.
std::vector<WeightedTerm> country_terms(const GazetteerEntry& entry);

/// Throws NotFoundError listing near matches when the country is unknown.
QueryExpr convert_country(std::string_view name, const Gazetteer& gazetteer);

/// Weight of `year` within [from, to] under the profile, rounded to one
/// decimal for the bell-shaped profile.
double year_weight(int year, int from, int to, WeightProfile profile);

/// Year terms, then decade terms ("1850s"), then century terms
/// ("19th century") whose coverage weight is positive.
/// Throws std::invalid_argument when from > to or from < 0.
QueryExpr convert_years(int from, int to, WeightProfile profile);

/// And of the expanded trend word and pattern word. Neutral trends and
/// stable patterns contribute nothing; findings with fewer than two points
/// produce nothing.
std::optional<QueryExpr> convert_finding(const Eigen::VectorXd& f,
                                         const ConverterConfig& cfg,
                                         const KeywordResources& res);

}  // namespace vqsearch
