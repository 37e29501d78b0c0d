#include "vqsearch/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vqsearch {
namespace {

struct Eval {
  std::vector<double> score;
  std::vector<char> match;
  std::vector<double> best;  // best single-term contribution
  std::vector<std::uint32_t> best_pos;
  bool required = false;

  explicit Eval(std::size_t n) : score(n, 0.0), match(n, 0), best(n, -1.0), best_pos(n, 0) {}
};

const Index::Posting* posting_for(const std::vector<Index::Posting>& list, std::size_t doc) {
  auto it = std::lower_bound(list.begin(), list.end(), doc,
                             [](const Index::Posting& p, std::size_t d) { return p.doc < d; });
  return (it != list.end() && it->doc == doc) ? &*it : nullptr;
}

}  // namespace

Index Index::build(std::vector<Document> corpus, Tokenizer tokenizer) {
  Index idx;
  idx.tokenizer_ = std::move(tokenizer);
  idx.docs_ = std::move(corpus);
  idx.text_.resize(idx.docs_.size());
  for (std::size_t d = 0; d < idx.docs_.size(); ++d) {
    const Document& doc = idx.docs_[d];
    DocText& text = idx.text_[d];
    std::istringstream words(doc.title + " " + doc.body);
    std::string word;
    std::uint32_t offset = 0;
    while (words >> word) {
      const auto w = static_cast<std::uint32_t>(text.words.size());
      text.words.push_back(word);
      for (auto& tok : idx.tokenizer_.tokenize(word)) {
        auto& list = idx.postings_[tok];
        if (list.empty() || list.back().doc != d) list.push_back({d, {}});
        list.back().positions.push_back(offset++);
        text.word_of.push_back(w);
      }
    }
  }
  return idx;
}

const std::vector<Index::Posting>* Index::postings(std::string_view term) const {
  auto it = postings_.find(std::string(term));
  return it == postings_.end() ? nullptr : &it->second;
}

std::size_t Index::document_frequency(std::string_view term) const {
  const auto* p = postings(term);
  return p ? p->size() : 0;
}

std::string Index::snippet(std::size_t doc, std::uint32_t token, std::size_t radius) const {
  const DocText& t = text_.at(doc);
  if (t.words.empty()) return {};
  const std::size_t center = token < t.word_of.size() ? t.word_of[token] : 0;
  const std::size_t lo = center > radius ? center - radius : 0;
  const std::size_t hi = std::min(t.words.size(), center + radius + 1);
  std::string out;
  for (std::size_t i = lo; i < hi; ++i) {
    if (i > lo) out += ' ';
    out += t.words[i];
  }
  return out;
}

std::vector<DocHit> Index::execute(const LocalQuery& query, std::size_t top_k) const {
  if (top_k == 0) throw std::invalid_argument("top_k must be >= 1");
  const std::size_t n = docs_.size();
  const double total = static_cast<double>(n);

  auto eval_term = [&](const Term& term) {
    Eval ev(n);
    const auto tokens = tokenizer_.tokenize(term.text);
    if (tokens.empty()) return ev;
    std::vector<const std::vector<Posting>*> lists;
    for (const auto& t : tokens) {
      const auto* p = postings(t);
      if (!p) return ev;
      lists.push_back(p);
    }
    // occurrences (start positions) per document
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> hits;
    for (const Posting& first : *lists[0]) {
      std::vector<std::uint32_t> starts;
      for (std::uint32_t start : first.positions) {
        bool ok = true;
        for (std::size_t k = 1; k < lists.size() && ok; ++k) {
          const Posting* p = posting_for(*lists[k], first.doc);
          ok = p && std::binary_search(p->positions.begin(), p->positions.end(),
                                       start + static_cast<std::uint32_t>(k));
        }
        if (ok) starts.push_back(start);
      }
      if (!starts.empty()) hits.emplace_back(first.doc, std::move(starts));
    }
    if (hits.empty()) return ev;
    const double idf = std::log(1.0 + total / static_cast<double>(hits.size()));
    for (const auto& [doc, starts] : hits) {
      const double s = static_cast<double>(starts.size()) * idf * term.weight;
      ev.score[doc] = s;
      ev.match[doc] = 1;
      ev.best[doc] = s;
      ev.best_pos[doc] = starts.front();
    }
    return ev;
  };

  auto eval = [&](auto&& self, const QueryExpr& e) -> Eval {
    return std::visit(
        [&](const auto& node) -> Eval {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Term>) {
            return eval_term(node);
          } else if constexpr (std::is_same_v<T, QueryExpr::Required>) {
            Eval ev = self(self, *node.child);
            ev.required = true;
            return ev;
          } else if constexpr (std::is_same_v<T, QueryExpr::Scaled>) {
            return self(self, scale(*node.child, node.factor));
          } else {
            constexpr bool is_and = std::is_same_v<T, QueryExpr::And>;
            Eval out(n);
            std::vector<char> any(n, 0), all(n, 1), required_ok(n, 1);
            for (const auto& child : node.children) {
              Eval c = self(self, child);
              for (std::size_t d = 0; d < n; ++d) {
                if (c.match[d]) {
                  any[d] = 1;
                  out.score[d] += c.score[d];
                  if (c.best[d] > out.best[d]) {
                    out.best[d] = c.best[d];
                    out.best_pos[d] = c.best_pos[d];
                  }
                } else {
                  all[d] = 0;
                  if (c.required) required_ok[d] = 0;
                }
              }
            }
            for (std::size_t d = 0; d < n; ++d) {
              out.match[d] = is_and ? all[d] : static_cast<char>(any[d] && required_ok[d]);
            }
            return out;
          }
        },
        e.node());
  };

  const Eval result = eval(eval, query.expr());
  std::vector<DocHit> hits;
  std::vector<std::pair<std::size_t, double>> matched;
  for (std::size_t d = 0; d < n; ++d) {
    if (result.match[d]) matched.emplace_back(d, result.score[d]);
  }
  std::sort(matched.begin(), matched.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return docs_[a.first].id < docs_[b.first].id;
  });
  if (matched.size() > top_k) matched.resize(top_k);
  hits.reserve(matched.size());
  for (const auto& [d, s] : matched) {
    hits.push_back({docs_[d].id, s, snippet(d, result.best_pos[d])});
  }
  return hits;
}

std::vector<DocHit> LocalBackend::search(const QueryExpr& canonical, std::size_t top_k) const {
  return index_.execute(to_local(canonical), top_k);
}

std::vector<DocHit> ElasticsearchBackend::search(const QueryExpr& canonical,
                                                 std::size_t top_k) const {
  return execute_es(config_, to_es_simple(canonical), top_k);
}

}  // namespace vqsearch
