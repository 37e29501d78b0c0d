#pragma once

#include <string>

#include "vqsearch/query.hpp"

namespace vqsearch {

/// Elasticsearch simple_query_string text.
///
///   weight         t^w            -> t^w
///   negation       -t             -> t        (term kept, sign dropped)
///   and            (a & b)        -> (a + b)
///   required       "x"            -> +(x)     (x without its own brackets)
///   phrase         (some words)   -> "some words"
///   or, grouping   (a | b)        -> (a | b)
std::string to_es_simple(const QueryExpr& expr);

/// Query for the built-in index: the same tree with every negation cleared.
class LocalQuery {
 public:
  const QueryExpr& expr() const noexcept { return expr_; }
  friend LocalQuery to_local(const QueryExpr& expr);

 private:
  explicit LocalQuery(QueryExpr e) : expr_(std::move(e)) {}
  QueryExpr expr_;
};

LocalQuery to_local(const QueryExpr& expr);

}  // namespace vqsearch
