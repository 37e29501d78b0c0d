#include "vqsearch/combiner.hpp"

#include <stdexcept>

namespace vqsearch {

QueryExpr combine(const ConversionBundle& bundle) {
  if (bundle.country_exprs.empty() || bundle.dataset_exprs.empty() ||
      bundle.year_exprs.empty()) {
    throw std::invalid_argument("combine: every input dimension needs an expression");
  }
  const std::size_t expected = bundle.country_exprs.size() *
                               bundle.dataset_exprs.size() * bundle.year_exprs.size();
  if (bundle.finding_exprs.size() != expected) {
    throw std::invalid_argument("combine: expected " + std::to_string(expected) +
                                " finding entries, got " +
                                std::to_string(bundle.finding_exprs.size()));
  }

  std::vector<QueryExpr> sets;
  sets.reserve(expected);
  for (const auto& [key, country] : bundle.country_exprs) {
    for (const auto& [name, dataset] : bundle.dataset_exprs) {
      for (const auto& [range, years] : bundle.year_exprs) {
        auto it = bundle.finding_exprs.find({key, name, range});
        if (it == bundle.finding_exprs.end()) {
          throw std::invalid_argument("combine: no finding entry for (" + key + ", " +
                                      name + ", " + std::to_string(range.from) + "-" +
                                      std::to_string(range.to) + ")");
        }
        std::vector<QueryExpr> parts{country, dataset, years};
        if (it->second) parts.push_back(*it->second);
        sets.push_back(QueryExpr::all_of(std::move(parts)));
      }
    }
  }

  QueryExpr intersection = QueryExpr::all_of_collapsed(sets);
  QueryExpr the_union = QueryExpr::any_of_collapsed(std::move(sets));
  return simplify(QueryExpr::any_of(
      {QueryExpr::scaled(std::move(intersection), 2.0), std::move(the_union)}));
}

}  // namespace vqsearch
