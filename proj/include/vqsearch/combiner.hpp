#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vqsearch/data.hpp"
#include "vqsearch/query.hpp"

namespace vqsearch {

/// Per-input sub-expressions of one selection. The ordered lists fix the
/// enumeration order of the combinations (key, then dataset, then range).
struct ConversionBundle {
  using FindingKey = std::tuple<std::string, std::string, YearRange>;  // key, name, range

  std::vector<std::pair<std::string, QueryExpr>> country_exprs;
  std::vector<std::pair<std::string, QueryExpr>> dataset_exprs;
  std::vector<std::pair<YearRange, QueryExpr>> year_exprs;
  std::map<FindingKey, std::optional<QueryExpr>> finding_exprs;
};

/// One And per (key, dataset, range); T_I = And of all, T_U = Or of all,
/// result simplify(Or[scale(T_I, 2), T_U]).
/// Throws std::invalid_argument when a dimension is empty or a finding entry
/// is missing for some combination.
QueryExpr combine(const ConversionBundle& bundle);

}  // namespace vqsearch
