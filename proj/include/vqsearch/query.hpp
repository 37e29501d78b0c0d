#pragma once

// Weighted boolean query representation.
//
// Concrete (inner) syntax:
//
//   expr     ::= group | required | term
//   group    ::= '(' expr { '|' expr }+ ')' | '(' expr { '&' expr }+ ')'
//   required ::= '"' expr '"'
//   term     ::= [ '-' ] ( word | '(' word { ' ' word } ')' ) [ '^' weight ]
//   word     ::= [a-z0-9]+
//
// Inside a group an unweighted phrase may drop its brackets and the printer
// does so: (united states | usa).
//
// Weights of 1 are not printed. Scaled nodes never appear in printed text;
// their factor is pushed down to the term weights.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vqsearch {

struct Term {
  std::string text;
  double weight = 1.0;
  bool negative = false;

  /// Throws std::invalid_argument unless text is lowercase words separated by
  /// single spaces and weight is a finite positive number.
  Term(std::string text, double weight = 1.0, bool negative = false);

  bool phrase() const noexcept { return text.find(' ') != std::string::npos; }

  friend bool operator==(const Term&, const Term&) = default;
};

/// True when text is usable as Term text.
bool is_valid_term_text(std::string_view text) noexcept;

class QueryExpr {
 public:
  struct Or {
    std::vector<QueryExpr> children;
  };
  struct And {
    std::vector<QueryExpr> children;
  };
  struct Required {
    std::shared_ptr<const QueryExpr> child;
  };
  struct Scaled {
    std::shared_ptr<const QueryExpr> child;
    double factor;
  };
  using Node = std::variant<Term, Or, And, Required, Scaled>;

  QueryExpr(Term term);  // NOLINT(google-explicit-constructor)

  /// Or/And require at least two children.
  static QueryExpr any_of(std::vector<QueryExpr> children);
  static QueryExpr all_of(std::vector<QueryExpr> children);
  static QueryExpr required(QueryExpr child);
  static QueryExpr scaled(QueryExpr child, double factor);

  /// Like any_of/all_of but a single child is returned as is.
  static QueryExpr any_of_collapsed(std::vector<QueryExpr> children);
  static QueryExpr all_of_collapsed(std::vector<QueryExpr> children);

  const Node& node() const noexcept { return node_; }

  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(node_);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(node_);
  }

  friend bool operator==(const QueryExpr& a, const QueryExpr& b);

 private:
  explicit QueryExpr(Node node) : node_(std::move(node)) {}
  Node node_;
};

bool operator==(const QueryExpr::Or& a, const QueryExpr::Or& b);
bool operator==(const QueryExpr::And& a, const QueryExpr::And& b);
bool operator==(const QueryExpr::Required& a, const QueryExpr::Required& b);
bool operator==(const QueryExpr::Scaled& a, const QueryExpr::Scaled& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

QueryExpr parse(std::string_view input);
std::string print(const QueryExpr& expr);

/// Shortest decimal form that reads back to the same double, never in
/// exponent notation ("2", "0.5", "0.30000000000000004").
std::string format_weight(double weight);

/// Multiplies every term weight by factor and removes Scaled nodes.
QueryExpr scale(const QueryExpr& expr, double factor);

/// Canonical form: no Scaled nodes, no Or-in-Or / And-in-And, siblings with
/// the same shape merged keeping the larger weight of each term, single-child
/// groups collapsed. Sibling order is otherwise preserved.
QueryExpr simplify(const QueryExpr& expr);

/// Print form with all weights dropped. Two expressions with equal shape
/// differ at most in their term weights.
std::string shape_key(const QueryExpr& expr);

/// Visits every term in print order.
template <typename F>
void for_each_term(const QueryExpr& expr, F&& fn) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Term>) {
          fn(node);
        } else if constexpr (std::is_same_v<T, QueryExpr::Or> ||
                             std::is_same_v<T, QueryExpr::And>) {
          for (const auto& c : node.children) for_each_term(c, fn);
        } else {
          for_each_term(*node.child, fn);
        }
      },
      expr.node());
}

}  // namespace vqsearch
