#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vqsearch/text.hpp"

namespace vqsearch {

/// Cosine similarity clamped to [-1, 1]. Throws std::invalid_argument on a
/// size mismatch or an all-zero operand.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine: dimension mismatch");
  }
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) {
    throw std::invalid_argument("cosine: zero vector");
  }
  const Scalar c = a.dot(b.template cast<Scalar>()) / (na * nb);
  return std::clamp(c, Scalar(-1), Scalar(1));
}

/// Word vectors, one row per vocabulary entry.
class EmbeddingModel {
 public:
  EmbeddingModel(std::vector<std::string> words, Eigen::MatrixXd vectors);

  /// Text format: `word v1 .. vD` per line. The first occurrence of a
  /// duplicated word wins.
  static EmbeddingModel load(const std::filesystem::path& path);

  Eigen::Index dimension() const noexcept { return vectors_.cols(); }
  std::size_t size() const noexcept { return words_.size(); }

  std::optional<Eigen::Index> find(std::string_view word) const;
  const std::string& word(Eigen::Index row) const { return words_.at(row); }
  auto vector(Eigen::Index row) const { return vectors_.row(row).transpose(); }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }

  /// Rows ordered by cosine to query (descending, ties by word). Rows with a
  /// zero vector or rejected by keep() are skipped.
  template <typename Keep>
  std::vector<std::pair<Eigen::Index, double>> nearest(
      const Eigen::VectorXd& query, std::size_t k, Keep&& keep) const;

 private:
  std::vector<std::string> words_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd norms_;
  std::unordered_map<std::string, Eigen::Index> index_;
};

/// Curated negative terms per keyword, file lines `keyword: term1, term2`.
class AntonymLexicon {
 public:
  AntonymLexicon() = default;
  explicit AntonymLexicon(std::map<std::string, std::vector<std::string>> entries);
  static AntonymLexicon load(const std::filesystem::path& path);

  /// Empty when the keyword has no entry. Lookup is case-insensitive.
  const std::vector<std::string>& lookup(std::string_view keyword) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

struct WeightedTerm {
  std::string term;
  double weight = 1.0;  // in (0, 1]
  bool negative = false;

  friend bool operator==(const WeightedTerm&, const WeightedTerm&) = default;
};

/// Literal keyword tokens (weight 1), then the k vocabulary words nearest to
/// the mean keyword vector (weight = cosine), then the lexicon's negative
/// terms. Without any in-vocabulary token only the literal tokens are
/// returned.
std::vector<WeightedTerm> expand(std::string_view keyword,
                                 const EmbeddingModel& model,
                                 const AntonymLexicon& lexicon, std::size_t k,
                                 const Tokenizer& tokenizer = Tokenizer());

/// Weighted mean of the vectors of the positive terms. Multi-word terms use
/// the mean of their in-vocabulary tokens. Throws std::invalid_argument when
/// no positive term is in the vocabulary.
Eigen::VectorXd embed_terms(const std::vector<WeightedTerm>& terms,
                            const EmbeddingModel& model,
                            const Tokenizer& tokenizer = Tokenizer());

/// Corpus-level statistics needed for idf.
class DocumentStats {
 public:
  virtual ~DocumentStats() = default;
  virtual std::size_t doc_count() const = 0;
  virtual std::size_t document_frequency(std::string_view term) const = 0;
};

/// Top-k tokens of text by tf * ln(1 + N/df). Ties are broken by the token.
std::vector<std::pair<std::string, double>> extract_keywords(
    std::string_view text, const DocumentStats& stats, std::size_t k,
    const Tokenizer& tokenizer = Tokenizer());

// ---------------------------------------------------------------------------

template <typename Keep>
std::vector<std::pair<Eigen::Index, double>> EmbeddingModel::nearest(
    const Eigen::VectorXd& query, std::size_t k, Keep&& keep) const {
  std::vector<std::pair<Eigen::Index, double>> out;
  const double qn = query.norm();
  if (qn == 0.0 || k == 0) return out;
  const Eigen::VectorXd sims = (vectors_ * query).cwiseQuotient(norms_ * qn);
  for (Eigen::Index i = 0; i < sims.size(); ++i) {
    if (norms_[i] == 0.0 || !keep(i)) continue;
    out.emplace_back(i, std::clamp(sims[i], -1.0, 1.0));
  }
  auto better = [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return words_[a.first] < words_[b.first];
  };
  if (out.size() > k) {
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k),
                      out.end(), better);
    out.resize(k);
  } else {
    std::sort(out.begin(), out.end(), better);
  }
  return out;
}

}  // namespace vqsearch
