#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace vqsearch {

/// Lowercasing splitter with a rule-based lemmatizer and a stopword filter.
///
/// Tokens are maximal runs of ASCII letters and digits. Lemmatization only
/// folds plurals: a trailing "ies" becomes "y" (tokens longer than four
/// characters) and a trailing "s" is dropped when the remaining stem has at
/// least three characters and does not end in a digit, "s", "u" or "i".
/// Words in the exception list are never changed.
class Tokenizer {
 public:
  /// Built-in English stopword and exception lists.
  Tokenizer();
  Tokenizer(std::unordered_set<std::string> stopwords,
            std::unordered_set<std::string> exceptions);

  /// Lowercase, split and lemmatize. Stopwords are kept.
  std::vector<std::string> normalize(std::string_view text) const;

  /// normalize() followed by stopword removal.
  std::vector<std::string> tokenize(std::string_view text) const;

  std::string lemmatize(std::string_view token) const;
  bool is_stopword(std::string_view token) const;

  static const std::unordered_set<std::string>& default_stopwords();
  static const std::unordered_set<std::string>& default_exceptions();

 private:
  std::unordered_set<std::string> stopwords_;
  std::unordered_set<std::string> exceptions_;
};

/// Tokenizes with the built-in lists.
std::vector<std::string> tokenize(std::string_view text);

/// One word per line; blank lines and lines starting with '#' are skipped.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

/// Lowercase, non-alphanumerics become single spaces, trimmed.
/// "Côte d'Ivoire" -> "c te d ivoire"; "North-America" -> "north america".
std::string normalize_phrase(std::string_view text);

std::string to_lower(std::string_view text);

}  // namespace vqsearch
