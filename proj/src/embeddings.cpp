#include "vqsearch/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "vqsearch/errors.hpp"
#include "vqsearch/query.hpp"

namespace vqsearch {

EmbeddingModel::EmbeddingModel(std::vector<std::string> words,
                               Eigen::MatrixXd vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  if (words_.empty()) throw std::invalid_argument("empty vocabulary");
  if (static_cast<Eigen::Index>(words_.size()) != vectors_.rows()) {
    throw std::invalid_argument("word count does not match vector rows");
  }
  if (vectors_.cols() == 0) throw std::invalid_argument("zero dimension");
  norms_ = vectors_.rowwise().norm();
  for (Eigen::Index i = 0; i < vectors_.rows(); ++i) {
    index_.emplace(words_[static_cast<std::size_t>(i)], i);
  }
}

EmbeddingModel EmbeddingModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings " + path.string());

  std::vector<std::string> words;
  std::vector<std::vector<double>> rows;
  std::set<std::string> seen;
  Eigen::Index dim = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    std::vector<double> values;
    std::string tok;
    while (fields >> tok) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": non-numeric component '" + tok + "'");
      }
      values.push_back(v);
    }
    if (values.empty()) {
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": no vector components");
    }
    if (dim < 0) dim = static_cast<Eigen::Index>(values.size());
    if (static_cast<Eigen::Index>(values.size()) != dim) {
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected " + std::to_string(dim) + " components, got " +
                      std::to_string(values.size()));
    }
    if (!seen.insert(word).second) continue;
    words.push_back(std::move(word));
    rows.push_back(std::move(values));
  }
  if (words.empty()) throw DataError(path.string() + ": empty vocabulary");

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.row(static_cast<Eigen::Index>(r)) =
        Eigen::Map<const Eigen::RowVectorXd>(rows[r].data(), dim);
  }
  return EmbeddingModel(std::move(words), std::move(m));
}

std::optional<Eigen::Index> EmbeddingModel::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

AntonymLexicon::AntonymLexicon(
    std::map<std::string, std::vector<std::string>> entries) {
  for (auto& [k, terms] : entries) {
    auto& dst = entries_[normalize_phrase(k)];
    for (const auto& t : terms) dst.push_back(normalize_phrase(t));
  }
}

AntonymLexicon AntonymLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  std::map<std::string, std::vector<std::string>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') {
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected 'keyword: term, term'");
    }
    const std::string key = normalize_phrase(line.substr(0, colon));
    if (key.empty()) {
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": empty keyword");
    }
    std::istringstream rest(line.substr(colon + 1));
    std::string item;
    auto& terms = entries[key];
    while (std::getline(rest, item, ',')) {
      std::string t = normalize_phrase(item);
      if (!t.empty()) terms.push_back(std::move(t));
    }
  }
  return AntonymLexicon(std::move(entries));
}

const std::vector<std::string>& AntonymLexicon::lookup(
    std::string_view keyword) const {
  static const std::vector<std::string> none;
  auto it = entries_.find(normalize_phrase(keyword));
  return it == entries_.end() ? none : it->second;
}

// ---------------------------------------------------------------------------

std::vector<WeightedTerm> expand(std::string_view keyword,
                                 const EmbeddingModel& model,
                                 const AntonymLexicon& lexicon, std::size_t k,
                                 const Tokenizer& tokenizer) {
  std::vector<WeightedTerm> out;
  std::set<std::string> used;
  for (auto& tok : tokenizer.tokenize(keyword)) {
    if (used.insert(tok).second) out.push_back({tok, 1.0, false});
  }

  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(model.dimension());
  int found = 0;
  for (const auto& t : out) {
    if (auto row = model.find(t.term)) {
      centroid += model.vector(*row);
      ++found;
    }
  }
  if (found == 0) return out;
  centroid /= found;

  const auto& antonyms = lexicon.lookup(keyword);
  const std::set<std::string> negatives(antonyms.begin(), antonyms.end());
  auto keep = [&](Eigen::Index row) {
    const std::string& w = model.word(row);
    return !used.count(w) && !negatives.count(w) && is_valid_term_text(w);
  };
  for (const auto& [row, sim] : model.nearest(centroid, k, keep)) {
    if (sim <= 0.0) break;
    out.push_back({model.word(row), std::min(sim, 1.0), false});
    used.insert(model.word(row));
  }
  for (const auto& a : antonyms) {
    if (is_valid_term_text(a)) out.push_back({a, 1.0, true});
  }
  return out;
}

Eigen::VectorXd embed_terms(const std::vector<WeightedTerm>& terms,
                            const EmbeddingModel& model,
                            const Tokenizer& tokenizer) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(model.dimension());
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.negative) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(model.dimension());
    int n = 0;
    if (auto row = model.find(t.term)) {
      v = model.vector(*row);
      n = 1;
    } else {
      for (const auto& tok : tokenizer.tokenize(t.term)) {
        if (auto r = model.find(tok)) {
          v += model.vector(*r);
          ++n;
        }
      }
    }
    if (n == 0) continue;
    sum += t.weight * (v / n);
    total += t.weight;
  }
  if (total == 0.0) {
    throw std::invalid_argument("embed_terms: no positive term in vocabulary");
  }
  return sum / total;
}

std::vector<std::pair<std::string, double>> extract_keywords(
    std::string_view text, const DocumentStats& stats, std::size_t k,
    const Tokenizer& tokenizer) {
  std::map<std::string, std::size_t> tf;
  for (auto& tok : tokenizer.tokenize(text)) ++tf[tok];

  const double n = static_cast<double>(std::max<std::size_t>(1, stats.doc_count()));
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(tf.size());
  for (const auto& [term, count] : tf) {
    const double df =
        static_cast<double>(std::max<std::size_t>(1, stats.document_frequency(term)));
    scored.emplace_back(term, static_cast<double>(count) * std::log(1.0 + n / df));
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace vqsearch
