#include "vqsearch/converters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vqsearch/errors.hpp"

namespace vqsearch {
namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string ordinal(int n) {
  const int mod100 = n % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

// Terms for the periods of length `span` that [from, to] overlaps, weighted
// 1 - 2 * (uncovered years) / span with the period closed at both ends.
void append_periods(int from, int to, int span, std::vector<QueryExpr>& out) {
  for (int k = floor_div(from, span); k <= floor_div(to, span); ++k) {
    const int begin = k * span;
    const int end = begin + span;
    const int gap = std::max(0, from - begin) + std::max(0, end - to);
    const int numerator = span - 2 * gap;
    if (numerator <= 0) continue;
    const double w = static_cast<double>(numerator) / span;
    std::string text = span == 10 ? std::to_string(begin) + "s"
                                  : ordinal(k + 1) + " century";
    out.emplace_back(Term(std::move(text), w));
  }
}

}  // namespace

void ConverterConfig::validate() const {
  if (ma_window < 1) throw std::invalid_argument("ma_window must be >= 1");
  if (!(lambda1 > 0.0)) throw std::invalid_argument("lambda1 must be > 0");
  if (!(lambda2 > 0.0)) throw std::invalid_argument("lambda2 must be > 0");
  if (!(width_rel_height > 0.0)) {
    throw std::invalid_argument("width_rel_height must be > 0");
  }
}

FindingSummary analyze_finding(const Eigen::VectorXd& f, const ConverterConfig& cfg) {
  const auto p = detect_pattern(f, cfg);
  return {detect_trend(f, cfg), p.pattern, p.factor};
}

QueryExpr to_expression(const std::vector<WeightedTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("no terms to convert");
  std::vector<QueryExpr> kids;
  kids.reserve(terms.size());
  for (const auto& t : terms) kids.emplace_back(Term(t.term, t.weight, t.negative));
  return QueryExpr::any_of_collapsed(std::move(kids));
}

QueryExpr convert_keyword(std::string_view name, const KeywordResources& res) {
  auto terms = expand(name, res.model, res.lexicon, res.neighbor_k, res.tokenizer);
  const bool has_positive =
      std::any_of(terms.begin(), terms.end(), [](const auto& t) { return !t.negative; });
  if (!has_positive) {
    std::string phrase = normalize_phrase(name);
    if (phrase.empty()) {
      throw std::invalid_argument("keyword '" + std::string(name) + "' has no usable words");
    }
    terms.insert(terms.begin(), {std::move(phrase), 1.0, false});
  }
  return to_expression(terms);
}

std::vector<WeightedTerm> country_terms(const GazetteerEntry& entry) {
  std::vector<WeightedTerm> terms;
  terms.push_back({entry.name, 1.0, false});
  for (const auto& s : entry.synonyms) {
    if (s != entry.name) terms.push_back({s, 1.0, false});
  }
  if (entry.region && !entry.region->empty()) {
    terms.push_back({*entry.region, entry.region_weight, false});
  }
  return terms;
}

QueryExpr convert_country(std::string_view name, const Gazetteer& gazetteer) {
  const GazetteerEntry* entry = gazetteer.find(name);
  if (!entry) {
    std::string msg = "unknown country '" + std::string(name) + "'";
    const auto near = gazetteer.near_matches(name);
    if (!near.empty()) {
      msg += "; did you mean";
      for (std::size_t i = 0; i < near.size(); ++i) {
        msg += (i ? ", '" : " '") + near[i] + "'";
      }
      msg += "?";
    }
    throw NotFoundError(msg);
  }
  return to_expression(country_terms(*entry));
}

double year_weight(int year, int from, int to, WeightProfile profile) {
  if (profile == WeightProfile::uniform) return 1.0;
  const double center = (from + to) / 2.0;
  const double gamma = (to - from + 1) < 5 ? 1.0 : (to - from) / 4.0;
  const double x = (year - center) / gamma;
  return std::round(10.0 / (1.0 + x * x)) / 10.0;
}

QueryExpr convert_years(int from, int to, WeightProfile profile) {
  if (from > to) {
    throw std::invalid_argument("year range " + std::to_string(from) + "-" +
                                std::to_string(to) + " is reversed");
  }
  if (from < 0) throw std::invalid_argument("negative years are not supported");
  std::vector<QueryExpr> kids;
  for (int y = from; y <= to; ++y) {
    kids.emplace_back(Term(std::to_string(y), year_weight(y, from, to, profile)));
  }
  append_periods(from, to, 10, kids);
  append_periods(from, to, 100, kids);
  return QueryExpr::any_of_collapsed(std::move(kids));
}

std::optional<QueryExpr> convert_finding(const Eigen::VectorXd& f,
                                         const ConverterConfig& cfg,
                                         const KeywordResources& res) {
  if (f.size() <= 1) return std::nullopt;
  const FindingSummary s = analyze_finding(f, cfg);
  std::vector<QueryExpr> parts;
  if (s.trend != Trend::neutral) {
    parts.push_back(convert_keyword(to_string(s.trend), res));
  }
  if (s.pattern != Pattern::stable) {
    parts.push_back(convert_keyword(to_string(s.pattern), res));
  }
  if (parts.empty()) return std::nullopt;
  return QueryExpr::all_of_collapsed(std::move(parts));
}

}  // namespace vqsearch
