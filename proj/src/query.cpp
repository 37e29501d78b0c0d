#include "vqsearch/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <system_error>

namespace vqsearch {
namespace {

bool is_word_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace

bool is_valid_term_text(std::string_view text) noexcept {
  if (text.empty() || text.front() == ' ' || text.back() == ' ') return false;
  char prev = 'a';
  for (char c : text) {
    if (c == ' ') {
      if (prev == ' ') return false;
    } else if (!is_word_char(c)) {
      return false;
    }
    prev = c;
  }
  return true;
}

Term::Term(std::string t, double w, bool neg)
    : text(std::move(t)), weight(w), negative(neg) {
  if (!is_valid_term_text(text)) {
    throw std::invalid_argument("invalid term text '" + text + "'");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("term weight must be positive, got " +
                                std::to_string(weight));
  }
}

QueryExpr::QueryExpr(Term term) : node_(std::move(term)) {}

QueryExpr QueryExpr::any_of(std::vector<QueryExpr> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("or-group needs at least two children");
  }
  return QueryExpr(Node(Or{std::move(children)}));
}

QueryExpr QueryExpr::all_of(std::vector<QueryExpr> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("and-group needs at least two children");
  }
  return QueryExpr(Node(And{std::move(children)}));
}

QueryExpr QueryExpr::any_of_collapsed(std::vector<QueryExpr> children) {
  if (children.size() == 1) return std::move(children.front());
  return any_of(std::move(children));
}

QueryExpr QueryExpr::all_of_collapsed(std::vector<QueryExpr> children) {
  if (children.size() == 1) return std::move(children.front());
  return all_of(std::move(children));
}

QueryExpr QueryExpr::required(QueryExpr child) {
  return QueryExpr(
      Node(Required{std::make_shared<const QueryExpr>(std::move(child))}));
}

QueryExpr QueryExpr::scaled(QueryExpr child, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  return QueryExpr(
      Node(Scaled{std::make_shared<const QueryExpr>(std::move(child)), factor}));
}

bool operator==(const QueryExpr& a, const QueryExpr& b) {
  return a.node_ == b.node_;
}
bool operator==(const QueryExpr::Or& a, const QueryExpr::Or& b) {
  return a.children == b.children;
}
bool operator==(const QueryExpr::And& a, const QueryExpr::And& b) {
  return a.children == b.children;
}
bool operator==(const QueryExpr::Required& a, const QueryExpr::Required& b) {
  return *a.child == *b.child;
}
bool operator==(const QueryExpr::Scaled& a, const QueryExpr::Scaled& b) {
  return a.factor == b.factor && *a.child == *b.child;
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(position) +
                         ": " + message),
      position_(position) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view in) : in_(in) {}

  QueryExpr parse_all() {
    skip_spaces();
    if (at_end()) fail("empty query");
    QueryExpr e = parse_expr();
    skip_spaces();
    if (!at_end()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(std::min(pos_, in_.size()), msg);
  }
  bool at_end() const { return pos_ >= in_.size(); }
  char peek() const { return at_end() ? '\0' : in_[pos_]; }
  void skip_spaces() {
    while (!at_end() && in_[pos_] == ' ') ++pos_;
  }

  QueryExpr parse_expr() {
    skip_spaces();
    const char c = peek();
    if (c == '"') return parse_required();
    if (c == '(' && !spaced_term_ahead()) return parse_group();
    return parse_term();
  }

  QueryExpr parse_required() {
    ++pos_;  // opening quote
    skip_spaces();
    if (peek() == '"') fail("empty required group");
    QueryExpr inner = parse_expr();
    skip_spaces();
    if (peek() != '"') fail("expected closing '\"'");
    ++pos_;
    return QueryExpr::required(std::move(inner));
  }

  // '(' word { ' '+ word } ')' directly at pos_.
  bool spaced_term_ahead() const {
    std::size_t p = pos_ + 1;
    bool need_word = true;
    while (p < in_.size()) {
      const char c = in_[p];
      if (is_word_char(c)) {
        need_word = false;
      } else if (c == ' ') {
        if (need_word) return false;
        while (p + 1 < in_.size() && in_[p + 1] == ' ') ++p;
        need_word = true;
      } else if (c == ')') {
        return !need_word;
      } else {
        return false;
      }
      ++p;
    }
    return false;
  }

  QueryExpr parse_group() {
    const std::size_t open = pos_;
    ++pos_;
    skip_spaces();
    if (peek() == ')') fail("empty group");
    std::vector<QueryExpr> children;
    children.push_back(parse_expr());
    char op = '\0';
    for (;;) {
      skip_spaces();
      const char c = peek();
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c != '|' && c != '&') {
        if (at_end()) {
          pos_ = open;
          fail("unmatched '('");
        }
        fail("expected '|', '&' or ')'");
      }
      if (op != '\0' && c != op) fail("mixed '|' and '&' in one group");
      op = c;
      ++pos_;
      skip_spaces();
      if (peek() == ')' || at_end()) fail("missing operand");
      children.push_back(parse_expr());
    }
    if (peek() == '^') fail("weights apply to terms only");
    if (children.size() == 1) return std::move(children.front());
    return op == '|' ? QueryExpr::any_of(std::move(children))
                     : QueryExpr::all_of(std::move(children));
  }

  QueryExpr parse_term() {
    const std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    std::string text;
    if (peek() == '(') {
      if (!spaced_term_ahead()) fail("expected phrase after '-'");
      ++pos_;
      while (peek() != ')') {
        if (peek() == ' ') {
          skip_spaces();
          text.push_back(' ');
        } else {
          text.push_back(in_[pos_++]);
        }
      }
      ++pos_;
    } else {
      read_words(text);
      if (text.empty()) {
        if (at_end()) fail("unexpected end of input");
        if (peek() == ')') {
          fail("unmatched ')'");
        }
        fail(std::string("unexpected character '") + peek() + "'");
      }
    }
    double weight = 1.0;
    if (peek() == '^') {
      ++pos_;
      weight = parse_weight();
    }
    try {
      return Term(std::move(text), weight, negative);
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  // word { ' '+ word }, stopping before spaces not followed by a word.
  void read_words(std::string& text) {
    for (;;) {
      while (is_word_char(peek())) text.push_back(in_[pos_++]);
      std::size_t p = pos_;
      while (p < in_.size() && in_[p] == ' ') ++p;
      if (text.empty() || p == pos_ || p >= in_.size() || !is_word_char(in_[p])) return;
      text.push_back(' ');
      pos_ = p;
    }
  }

  double parse_weight() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                         peek() == '.')) {
      ++pos_;
    }
    const std::string_view digits = in_.substr(start, pos_ - start);
    if (digits.empty() || digits.front() == '.' || digits.back() == '.') {
      pos_ = start;
      fail("malformed weight");
    }
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value,
                        std::chars_format::fixed);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      pos_ = start;
      fail("malformed weight");
    }
    if (!(value > 0.0)) {
      pos_ = start;
      fail("weight must be positive");
    }
    return value;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryExpr parse(std::string_view input) { return Parser(input).parse_all(); }

// ---------------------------------------------------------------------------
// Printing

std::string format_weight(double weight) {
  char buf[400];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, weight, std::chars_format::fixed);
  if (ec != std::errc()) throw std::invalid_argument("unprintable weight");
  return std::string(buf, ptr);
}

namespace {

void print_to(const QueryExpr& e, double factor, bool weights, std::string& out,
              bool in_group = false);

// Unweighted phrases inside a group print bare: (united states | usa).
void print_term(const Term& t, double factor, bool weights, bool in_group,
                std::string& out) {
  const double w = t.weight * factor;
  const bool bare = in_group && weights && w == 1.0 && !t.negative;
  if (t.negative) out += '-';
  if (t.phrase() && !bare) {
    out += '(';
    out += t.text;
    out += ')';
  } else {
    out += t.text;
  }
  if (weights && w != 1.0) {
    out += '^';
    out += format_weight(w);
  }
}

void print_group(const std::vector<QueryExpr>& children, const char* sep,
                 double factor, bool weights, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += sep;
    print_to(children[i], factor, weights, out, true);
  }
  out += ')';
}

void print_to(const QueryExpr& e, double factor, bool weights,
              std::string& out, bool in_group) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term>) {
          print_term(n, factor, weights, in_group, out);
        } else if constexpr (std::is_same_v<T, QueryExpr::Or>) {
          print_group(n.children, " | ", factor, weights, out);
        } else if constexpr (std::is_same_v<T, QueryExpr::And>) {
          print_group(n.children, " & ", factor, weights, out);
        } else if constexpr (std::is_same_v<T, QueryExpr::Required>) {
          out += '"';
          print_to(*n.child, factor, weights, out);
          out += '"';
        } else {
          print_to(*n.child, factor * n.factor, weights, out, in_group);
        }
      },
      e.node());
}

}  // namespace

std::string print(const QueryExpr& expr) {
  std::string out;
  print_to(expr, 1.0, true, out);
  return out;
}

std::string shape_key(const QueryExpr& expr) {
  std::string out;
  print_to(expr, 1.0, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

QueryExpr push_down(const QueryExpr& e, double factor) {
  return std::visit(
      [&](const auto& n) -> QueryExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term>) {
          return Term(n.text, n.weight * factor, n.negative);
        } else if constexpr (std::is_same_v<T, QueryExpr::Or> ||
                             std::is_same_v<T, QueryExpr::And>) {
          std::vector<QueryExpr> kids;
          kids.reserve(n.children.size());
          for (const auto& c : n.children) kids.push_back(push_down(c, factor));
          if constexpr (std::is_same_v<T, QueryExpr::Or>) {
            return QueryExpr::any_of(std::move(kids));
          } else {
            return QueryExpr::all_of(std::move(kids));
          }
        } else if constexpr (std::is_same_v<T, QueryExpr::Required>) {
          return QueryExpr::required(push_down(*n.child, factor));
        } else {
          return push_down(*n.child, factor * n.factor);
        }
      },
      e.node());
}

// a and b have equal shape_key and contain no Scaled nodes.
QueryExpr max_merge(const QueryExpr& a, const QueryExpr& b) {
  return std::visit(
      [&](const auto& n) -> QueryExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term>) {
          const Term& other = b.as<Term>();
          return Term(n.text, std::max(n.weight, other.weight), n.negative);
        } else if constexpr (std::is_same_v<T, QueryExpr::Or> ||
                             std::is_same_v<T, QueryExpr::And>) {
          const auto& other = b.as<T>().children;
          std::vector<QueryExpr> kids;
          kids.reserve(n.children.size());
          for (std::size_t i = 0; i < n.children.size(); ++i) {
            kids.push_back(max_merge(n.children[i], other[i]));
          }
          if constexpr (std::is_same_v<T, QueryExpr::Or>) {
            return QueryExpr::any_of(std::move(kids));
          } else {
            return QueryExpr::all_of(std::move(kids));
          }
        } else if constexpr (std::is_same_v<T, QueryExpr::Required>) {
          return QueryExpr::required(
              max_merge(*n.child, *b.as<QueryExpr::Required>().child));
        } else {
          throw std::logic_error("max_merge on scaled node");
        }
      },
      a.node());
}

template <typename Group>
QueryExpr simplify_group(const Group& g) {
  std::vector<QueryExpr> flat;
  for (const auto& c : g.children) {
    QueryExpr s = simplify(c);
    if (s.is<Group>()) {
      for (const auto& gc : s.as<Group>().children) flat.push_back(gc);
    } else {
      flat.push_back(std::move(s));
    }
  }

  std::vector<QueryExpr> merged;
  std::map<std::string, std::size_t> slot;
  for (auto& c : flat) {
    auto [it, inserted] = slot.emplace(shape_key(c), merged.size());
    if (inserted) {
      merged.push_back(std::move(c));
    } else {
      merged[it->second] = max_merge(merged[it->second], c);
    }
  }

  if (merged.size() == 1) return std::move(merged.front());
  if constexpr (std::is_same_v<Group, QueryExpr::Or>) {
    return QueryExpr::any_of(std::move(merged));
  } else {
    return QueryExpr::all_of(std::move(merged));
  }
}

}  // namespace

QueryExpr scale(const QueryExpr& expr, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  return push_down(expr, factor);
}

QueryExpr simplify(const QueryExpr& expr) {
  return std::visit(
      [&](const auto& n) -> QueryExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term>) {
          return n;
        } else if constexpr (std::is_same_v<T, QueryExpr::Or> ||
                             std::is_same_v<T, QueryExpr::And>) {
          return simplify_group(n);
        } else if constexpr (std::is_same_v<T, QueryExpr::Required>) {
          QueryExpr inner = simplify(*n.child);
          if (inner.is<QueryExpr::Required>()) return inner;
          return QueryExpr::required(std::move(inner));
        } else {
          return simplify(push_down(*n.child, n.factor));
        }
      },
      expr.node());
}

}  // namespace vqsearch
