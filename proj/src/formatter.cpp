#include "vqsearch/formatter.hpp"

namespace vqsearch {
namespace {

void emit(const QueryExpr& e, double factor, std::string& out);

void emit_weight(double w, std::string& out) {
  if (w != 1.0) {
    out += '^';
    out += format_weight(w);
  }
}

void emit_term(const Term& t, double factor, std::string& out) {
  if (t.phrase()) {
    out += '"';
    out += t.text;
    out += '"';
  } else {
    out += t.text;
  }
  emit_weight(t.weight * factor, out);
}

void emit_group(const std::vector<QueryExpr>& kids, const char* sep, double factor,
                std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += sep;
    emit(kids[i], factor, out);
  }
  out += ')';
}

// Contents of +( ... ): a group loses its brackets, a phrase its quotes.
void emit_required(const QueryExpr& child, double factor, std::string& out) {
  out += "+(";
  if (child.is<Term>()) {
    const Term& t = child.as<Term>();
    out += t.text;
    out += ')';
    emit_weight(t.weight * factor, out);
    return;
  }
  std::string inner;
  emit(child, factor, inner);
  if (inner.size() >= 2 && inner.front() == '(' && inner.back() == ')' &&
      (child.is<QueryExpr::Or>() || child.is<QueryExpr::And>())) {
    inner = inner.substr(1, inner.size() - 2);
  }
  out += inner;
  out += ')';
}

void emit(const QueryExpr& e, double factor, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term>) {
          emit_term(n, factor, out);
        } else if constexpr (std::is_same_v<T, QueryExpr::Or>) {
          emit_group(n.children, " | ", factor, out);
        } else if constexpr (std::is_same_v<T, QueryExpr::And>) {
          emit_group(n.children, " + ", factor, out);
        } else if constexpr (std::is_same_v<T, QueryExpr::Required>) {
          emit_required(*n.child, factor, out);
        } else {
          emit(*n.child, factor * n.factor, out);
        }
      },
      e.node());
}

QueryExpr clear_negation(const QueryExpr& e) {
  return std::visit(
      [&](const auto& n) -> QueryExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term>) {
          return Term(n.text, n.weight, false);
        } else if constexpr (std::is_same_v<T, QueryExpr::Or> ||
                             std::is_same_v<T, QueryExpr::And>) {
          std::vector<QueryExpr> kids;
          kids.reserve(n.children.size());
          for (const auto& c : n.children) kids.push_back(clear_negation(c));
          if constexpr (std::is_same_v<T, QueryExpr::Or>) {
            return QueryExpr::any_of(std::move(kids));
          } else {
            return QueryExpr::all_of(std::move(kids));
          }
        } else if constexpr (std::is_same_v<T, QueryExpr::Required>) {
          return QueryExpr::required(clear_negation(*n.child));
        } else {
          return QueryExpr::scaled(clear_negation(*n.child), n.factor);
        }
      },
      e.node());
}

}  // namespace

std::string to_es_simple(const QueryExpr& expr) {
  std::string out;
  emit(expr, 1.0, out);
  return out;
}

LocalQuery to_local(const QueryExpr& expr) { return LocalQuery(clear_negation(expr)); }

}  // namespace vqsearch
